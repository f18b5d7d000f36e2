#include "affectlens/service.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "affectlens/queries.hpp"
#include "affectlens/serialize.hpp"

namespace affectlens {

namespace {

constexpr const char* kJson = "application/json";

QueryParams to_params(const httplib::Request& req) {
  QueryParams params;
  for (const auto& [k, v] : req.params) params.emplace(k, v);
  return params;
}

}  // namespace

struct Service::Impl {
  Index* index;
  ServiceConfig config;
  httplib::Server server;
  int bound_port = -1;
  std::atomic<bool> stop_requested{false};
  std::atomic<bool> in_run{false};
};

Service::Service(Index& index, ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->index = &index;
  impl_->config = std::move(config);
  auto& server = impl_->server;
  Impl* impl = impl_.get();
  // The library default enables SO_REUSEPORT, which lets a second server
  // share a busy port silently. Plain SO_REUSEADDR makes the conflict visible.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });

  server.Get(".*", [impl](const httplib::Request& req, httplib::Response& res) {
    const QueryEngine engine(*impl->index);
    auto out = engine.get(req.path, to_params(req));
    res.status = out.status;
    res.set_content(std::move(out.body), kJson);
  });

  server.Post("/ingest", [impl](const httplib::Request& req, httplib::Response& res) {
    if (!impl->config.allow_ingest) {
      res.status = 403;
      res.set_content(error_body(ErrorCode::kUsage, "ingestion is disabled on this server"), kJson);
      return;
    }
    const auto path = req.get_param_value("path");
    const auto collection = req.get_param_value("collection");
    if (path.empty() || collection.empty()) {
      res.status = 400;
      res.set_content(error_body(ErrorCode::kUsage, "ingest needs 'path' and 'collection'"), kJson);
      return;
    }
    try {
      const auto report = impl->index->ingest(path, collection);
      nlohmann::json j;
      j["schema_version"] = kSchemaVersion;
      j["kind"] = "ingest_report";
      j["added"] = nlohmann::json::array();
      for (const auto& r : report.added) j["added"].push_back(r.doc_id);
      j["unchanged"] = nlohmann::json::array();
      for (const auto& r : report.unchanged) j["unchanged"].push_back(r.doc_id);
      j["failures"] = nlohmann::json::array();
      for (const auto& f : report.failures) {
        j["failures"].push_back(
            {{"path", f.path}, {"code", error_code_name(f.code)}, {"message", f.message}});
      }
      res.set_content(j.dump(), kJson);
    } catch (const Error& e) {
      res.status = http_status_for(e.code());
      res.set_content(error_body(e.code(), e.what()), kJson);
    }
  });
}

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  auto& cfg = impl_->config;
  int port = -1;
  if (cfg.port == 0) {
    port = impl_->server.bind_to_any_port(cfg.host.c_str());
  } else if (impl_->server.bind_to_port(cfg.host.c_str(), cfg.port)) {
    port = cfg.port;
  }
  if (port < 0) {
    throw Error(ErrorCode::kConflict,
                "cannot bind " + cfg.host + ":" + std::to_string(cfg.port) + " (port in use?)");
  }
  impl_->bound_port = port;
  return port;
}

void Service::run() {
  bind();
  spdlog::info("serving index {} on http://{}:{}", impl_->index->directory().string(),
               impl_->config.host, impl_->bound_port);
  impl_->in_run = true;
  // A stop() that raced ahead of us must not be lost.
  if (!impl_->stop_requested) impl_->server.listen_after_bind();
  impl_->in_run = false;
}

void Service::stop() {
  if (!impl_) return;
  impl_->stop_requested = true;
  // httplib ignores stop() until the accept loop is up, so wait for it.
  while (impl_->in_run && !impl_->server.is_running()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  impl_->server.stop();
}

int Service::port() const noexcept { return impl_->bound_port; }

}  // namespace affectlens
