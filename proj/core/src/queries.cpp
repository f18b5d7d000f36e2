#include "affectlens/queries.hpp"

#include <charconv>
#include <cmath>

#include "affectlens/corpus_stats.hpp"
#include "affectlens/salience.hpp"
#include "affectlens/timeline.hpp"
#include "json_codec.hpp"

namespace affectlens {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

std::string param(const QueryParams& params, std::string_view key, std::string_view fallback = {}) {
  auto it = params.find(key);
  return it == params.end() ? std::string(fallback) : it->second;
}

std::string require_param(const QueryParams& params, std::string_view key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) {
    throw Error(ErrorCode::kUsage, "missing query parameter '" + std::string(key) + "'");
  }
  return it->second;
}

template <typename T>
T number_param(const QueryParams& params, std::string_view key, T fallback) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) return fallback;
  T value{};
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kUsage,
                "query parameter '" + std::string(key) + "' is not a valid number: " + s);
  }
  return value;
}

json with_schema(std::string_view kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::vector<EmotionProfile> collection_profiles(const Index& index, const IndexManifest& m,
                                                std::string_view tag) {
  const auto records = m.collection(tag);
  if (records.empty()) {
    throw Error(ErrorCode::kNotFound, "unknown or empty collection '" + std::string(tag) + "'");
  }
  std::vector<EmotionProfile> out;
  out.reserve(records.size());
  for (const auto* r : records) out.push_back(*index.profile(r->doc_id));
  return out;
}

json texts(const Index& index, const IndexManifest& m) {
  json j = with_schema("texts");
  json docs = json::array();
  for (const auto& r : m.documents) {
    const auto profile = index.profile(r.doc_id);
    json densities = json::object();
    for (auto c : kAllCategories) {
      densities[std::string(to_string(c))] = emotion_density(*profile, c, m.density);
    }
    docs.push_back({{"doc_id", r.doc_id},
                    {"title", r.title},
                    {"collection", r.collection},
                    {"token_count", r.token_count},
                    {"ingested_at", r.ingested_at},
                    {"densities", std::move(densities)}});
  }
  j["density_window"] = m.density.window;
  j["documents"] = std::move(docs);
  return j;
}

json timeline_route(const Index& index, std::string_view id, const QueryParams& params) {
  TimelineOptions opts;
  opts.window_tokens = number_param<std::uint64_t>(params, "window", opts.window_tokens);
  opts.stride_tokens = number_param<std::uint64_t>(params, "stride", opts.stride_tokens);
  if (auto cats = param(params, "categories"); !cats.empty()) {
    opts.categories = parse_category_list(cats);
  }
  if (auto mode = param(params, "mode"); !mode.empty()) opts.mode = parse_timeline_mode(mode);
  index.profile(id);  // not-found check before tokenizing
  const TokenStream tokens = index.tokens(id);
  return codec::timeline_view(timeline(tokens, index.lexicon(), opts, std::string(id)));
}

json summary_route(const Index& index, const IndexManifest& m, std::string_view tag,
                   const QueryParams& params) {
  const auto profiles = collection_profiles(index, m, tag);
  json j = with_schema("collection_summary");
  j["summary"] = codec::summary_view(corpus_summary(profiles, m.density, std::string(tag)));
  if (auto other = param(params, "against"); !other.empty()) {
    const auto others = collection_profiles(index, m, other);
    std::vector<CategoryTests> tests;
    for (auto c : kAllCategories) {
      const auto a = densities_of(profiles, c, m.density);
      const auto b = densities_of(others, c, m.density);
      if (a.size() < 2 || b.size() < 2) {
        throw Error(ErrorCode::kUsage, "significance tests need at least two documents per collection");
      }
      CategoryTests t{c, mean_difference_test(a, b), std::nullopt};
      try {
        t.variance_ratio = variance_ratio_test(a, b);
      } catch (const Error&) {
      }
      tests.push_back(t);
    }
    j["against"] = codec::summary_view(corpus_summary(others, m.density, other));
    j["tests"] = codec::tests_view(tag, other, tests);
  }
  return j;
}

json route(const Index& index, std::string_view path, const QueryParams& params) {
  const auto m = index.manifest();
  const auto parts = split_path(path);
  auto not_found = [&]() -> json {
    throw Error(ErrorCode::kNotFound, "no such endpoint: " + std::string(path));
  };

  if (parts.size() == 1 && parts[0] == "texts") return texts(index, *m);
  if (parts.size() == 3 && parts[0] == "texts" && parts[2] == "profile") {
    return codec::profile_view(*index.profile(parts[1]), m->density);
  }
  if (parts.size() == 3 && parts[0] == "texts" && parts[2] == "timeline") {
    return timeline_route(index, parts[1], params);
  }
  if (parts.size() == 1 && parts[0] == "compare") {
    const auto a = index.profile(require_param(params, "a"));
    const auto b = index.profile(require_param(params, "b"));
    const auto k = number_param<std::size_t>(params, "k", kDefaultCloudSize);
    return codec::comparison_view(*a, *b, k);
  }
  if (parts.size() == 1 && parts[0] == "collections") {
    json j = with_schema("collections");
    json list = json::array();
    for (const auto& tag : m->collections()) {
      list.push_back({{"tag", tag}, {"doc_count", m->collection(tag).size()}});
    }
    j["collections"] = std::move(list);
    return j;
  }
  if (parts.size() == 3 && parts[0] == "collections") {
    const std::string_view tag = parts[1];
    if (parts[2] == "summary") return summary_route(index, *m, tag, params);
    if (parts[2] == "histogram") {
      const auto category = require_category(param(params, "category", "negative"));
      const double width = number_param<double>(params, "width", 100.0);
      const auto profiles = collection_profiles(index, *m, tag);
      json j = codec::histogram_view(histogram(densities_of(profiles, category, m->density), width, category));
      j["collection"] = tag;
      return j;
    }
    if (parts[2] == "ranking") {
      const auto category = require_category(param(params, "category", "negative"));
      const auto profiles = collection_profiles(index, *m, tag);
      json j = codec::ranking_view(rank_by_density(profiles, category, m->density), category);
      j["collection"] = tag;
      return j;
    }
  }
  if (parts.size() == 3 && parts[0] == "entities" && parts[2] == "timeline") {
    auto tl = index.entity_timeline(parts[1]);
    if (!tl) {
      throw Error(ErrorCode::kNotFound,
                  "no entity timeline for '" + std::string(parts[1]) + "'; run ngram-scan --index first");
    }
    return codec::entity_view(*tl);
  }
  return not_found();
}

}  // namespace

int http_status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kParse:
    case ErrorCode::kEncoding: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kFingerprintMismatch:
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kUndefined: return 422;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

std::string error_body(ErrorCode code, std::string_view message) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = {{"code", error_code_name(code)}, {"message", message}};
  return j.dump();
}

QueryResponse QueryEngine::get(std::string_view path, const QueryParams& params) const {
  try {
    return {200, route(*index_, path, params).dump()};
  } catch (const Error& e) {
    return {http_status_for(e.code()), error_body(e.code(), e.what())};
  } catch (const std::exception& e) {
    return {500, error_body(ErrorCode::kIo, e.what())};
  }
}

}  // namespace affectlens
