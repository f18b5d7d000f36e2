#pragma once

#include <map>
#include <string>
#include <string_view>

#include "affectlens/index.hpp"

namespace affectlens {

struct QueryResponse {
  int status = 200;
  std::string body;  // JSON
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

// Read-only query layer over an Index. Every HTTP GET endpoint is answered
// here, so the service, the CLI and the tests share one code path.
//
//   /texts
//   /texts/{id}/profile
//   /texts/{id}/timeline?window=&stride=&categories=&mode=
//   /compare?a=&b=&k=
//   /collections
//   /collections/{tag}/summary[?against=]
//   /collections/{tag}/histogram?category=&width=
//   /collections/{tag}/ranking?category=
//   /entities/{word}/timeline
class QueryEngine {
 public:
  explicit QueryEngine(const Index& index) : index_(&index) {}

  // Never throws for request errors: they come back as a JSON error body
  // {"schema_version": 1, "error": {"code": "...", "message": "..."}}
  // with a matching HTTP status.
  QueryResponse get(std::string_view path, const QueryParams& params) const;

 private:
  const Index* index_;
};

int http_status_for(ErrorCode code) noexcept;
std::string error_body(ErrorCode code, std::string_view message);

}  // namespace affectlens
