#pragma once

#include <memory>
#include <string>

#include "affectlens/index.hpp"

namespace affectlens {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  bool allow_ingest = false;
};

// HTTP front end over an Index. GET routes are served by QueryEngine;
// POST /ingest?path=&collection= is available only with allow_ingest.
class Service {
 public:
  Service(Index& index, ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the socket. Throws Error(kConflict) if the port is taken.
  // Returns the bound port.
  int bind();

  // Blocks until stop() is called. Calls bind() first if needed.
  void run();

  void stop();

  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace affectlens
