#include "affectlens/index.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "affectlens/unicode.hpp"
#include "digest.hpp"
#include "json_codec.hpp"

namespace affectlens {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read error in " + path.string());
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kIo, "write error in " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot commit " + path.string() + ": " + ec.message());
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "Title: ..." from a Project Gutenberg header, if any.
std::optional<std::string> gutenberg_title(std::string_view text) {
  const std::string_view head = text.substr(0, std::min<std::size_t>(text.size(), 32 * 1024));
  std::size_t pos = 0;
  while (pos < head.size()) {
    auto nl = head.find('\n', pos);
    if (nl == std::string_view::npos) nl = head.size();
    std::string_view line = head.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.substr(0, 6) == "Title:") {
      line.remove_prefix(6);
      while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      if (!line.empty()) return std::string(line);
    }
    if (line.substr(0, 3) == "***") break;
    pos = nl + 1;
  }
  return std::nullopt;
}

json record_to_json(const DocumentRecord& r) {
  return {{"doc_id", r.doc_id},
          {"title", r.title},
          {"collection", r.collection},
          {"source_path", r.source_path},
          {"content_hash", r.content_hash},
          {"token_count", r.token_count},
          {"ingested_at", r.ingested_at},
          {"profile_file", r.profile_file},
          {"text_file", r.text_file}};
}

DocumentRecord record_from_json(const json& j) {
  DocumentRecord r;
  r.doc_id = j.at("doc_id").get<std::string>();
  r.title = j.at("title").get<std::string>();
  r.collection = j.at("collection").get<std::string>();
  r.source_path = j.at("source_path").get<std::string>();
  r.content_hash = j.at("content_hash").get<std::string>();
  r.token_count = j.at("token_count").get<std::uint64_t>();
  r.ingested_at = j.at("ingested_at").get<std::string>();
  r.profile_file = j.at("profile_file").get<std::string>();
  r.text_file = j.at("text_file").get<std::string>();
  return r;
}

std::string manifest_to_text(const IndexManifest& m) {
  json j;
  j["schema_version"] = m.schema_version;
  j["lexicon_fingerprint"] = m.lexicon_fingerprint;
  j["density_window"] = m.density.window;
  j["tokenizer_version"] = m.tokenizer_version;
  j["documents"] = json::array();
  for (const auto& r : m.documents) j["documents"].push_back(record_to_json(r));
  return j.dump(2) + "\n";
}

IndexManifest manifest_from_text(const std::string& text, const fs::path& path) {
  try {
    const json j = json::parse(text);
    IndexManifest m;
    m.schema_version = j.at("schema_version").get<int>();
    m.lexicon_fingerprint = j.at("lexicon_fingerprint").get<std::string>();
    m.density.window = j.at("density_window").get<std::uint64_t>();
    m.tokenizer_version = j.at("tokenizer_version").get<std::string>();
    for (const auto& r : j.at("documents")) m.documents.push_back(record_from_json(r));
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "corrupt index manifest " + path.string() + ": " + e.what());
  }
}

// Entity file names: [a-z0-9] kept, everything else hex-escaped.
std::string entity_file_name(std::string_view folded) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char ch : folded) {
    if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9')) {
      out.push_back(static_cast<char>(ch));
    } else {
      out.push_back('_');
      out.push_back(kHex[ch >> 4]);
      out.push_back(kHex[ch & 0xF]);
    }
  }
  return out + ".json";
}

}  // namespace

std::string slugify(std::string_view text) {
  std::string out;
  bool dash = false;
  for (char ch : text) {
    char c = ch;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      if (dash && !out.empty()) out.push_back('-');
      out.push_back(c);
      dash = false;
    } else {
      dash = true;
    }
  }
  return out;
}

const DocumentRecord* IndexManifest::find(std::string_view doc_id) const {
  for (const auto& r : documents) {
    if (r.doc_id == doc_id) return &r;
  }
  return nullptr;
}

std::vector<const DocumentRecord*> IndexManifest::collection(std::string_view tag) const {
  std::vector<const DocumentRecord*> out;
  for (const auto& r : documents) {
    if (r.collection == tag) out.push_back(&r);
  }
  return out;
}

std::vector<std::string> IndexManifest::collections() const {
  std::set<std::string> tags;
  for (const auto& r : documents) tags.insert(r.collection);
  return {tags.begin(), tags.end()};
}

struct Index::State {
  fs::path dir;
  std::shared_ptr<const EmotionLexicon> lexicon;

  mutable std::mutex snapshot_mutex;
  std::shared_ptr<const IndexManifest> committed;

  std::mutex write_mutex;

  mutable std::mutex cache_mutex;
  mutable std::map<std::string, std::shared_ptr<const EmotionProfile>> profile_cache;

  std::shared_ptr<const IndexManifest> snapshot() const {
    std::lock_guard lock(snapshot_mutex);
    return committed;
  }

  void commit(IndexManifest next) {
    write_file_atomic(dir / kManifestName, manifest_to_text(next));
    auto ptr = std::make_shared<const IndexManifest>(std::move(next));
    std::lock_guard lock(snapshot_mutex);
    committed = std::move(ptr);
  }
};

Index::Index(std::unique_ptr<State> state) : state_(std::move(state)) {}
Index::Index(Index&&) noexcept = default;
Index& Index::operator=(Index&&) noexcept = default;
Index::~Index() = default;

Index Index::create(const fs::path& dir, std::shared_ptr<const EmotionLexicon> lexicon,
                    DensityConfig cfg) {
  if (!lexicon) throw Error(ErrorCode::kUsage, "index needs a lexicon");
  if (cfg.window == 0) throw Error(ErrorCode::kUsage, "density window must be at least 1");
  if (fs::exists(dir / kManifestName)) {
    Index index = open(dir, std::move(lexicon));
    if (index.manifest()->density.window != cfg.window) {
      throw Error(ErrorCode::kUsage, "index at " + dir.string() + " uses density window " +
                                         std::to_string(index.manifest()->density.window));
    }
    return index;
  }
  std::error_code ec;
  for (const char* sub : {"docs", "texts", "entities"}) {
    fs::create_directories(dir / sub, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + (dir / sub).string() + ": " + ec.message());
  }
  auto state = std::make_unique<State>();
  state->dir = dir;
  state->lexicon = std::move(lexicon);
  IndexManifest m;
  m.schema_version = 1;
  m.lexicon_fingerprint = state->lexicon->fingerprint();
  m.density = cfg;
  m.tokenizer_version = std::string(kTokenizerVersion);
  state->commit(std::move(m));
  return Index(std::move(state));
}

Index Index::open(const fs::path& dir, std::shared_ptr<const EmotionLexicon> lexicon) {
  if (!lexicon) throw Error(ErrorCode::kUsage, "index needs a lexicon");
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::exists(manifest_path)) {
    throw Error(ErrorCode::kNotFound, "no index at " + dir.string());
  }
  IndexManifest m = manifest_from_text(read_file(manifest_path), manifest_path);
  const std::string fp = lexicon->fingerprint();
  if (m.lexicon_fingerprint != fp) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "index " + dir.string() + " was built with lexicon " +
                    m.lexicon_fingerprint.substr(0, 12) + ", current lexicon is " +
                    fp.substr(0, 12));
  }
  if (m.tokenizer_version != kTokenizerVersion) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "index " + dir.string() + " was built with tokenizer " + m.tokenizer_version);
  }
  auto state = std::make_unique<State>();
  state->dir = dir;
  state->lexicon = std::move(lexicon);
  state->committed = std::make_shared<const IndexManifest>(std::move(m));
  return Index(std::move(state));
}

std::shared_ptr<const IndexManifest> Index::manifest() const { return state_->snapshot(); }

const EmotionLexicon& Index::lexicon() const { return *state_->lexicon; }

const fs::path& Index::directory() const { return state_->dir; }

IngestReport Index::ingest(const fs::path& path, const std::string& collection) {
  if (collection.empty()) throw Error(ErrorCode::kUsage, "collection tag must not be empty");
  std::lock_guard write_lock(state_->write_mutex);

  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (!entry.is_regular_file()) continue;
      if (entry.path().filename().string().starts_with(".")) continue;
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }

  IngestReport report;
  IndexManifest next = *state_->snapshot();
  std::vector<fs::path> superseded;

  for (const auto& file : files) {
    try {
      std::string raw = read_file(file);
      if (!unicode::is_valid_utf8(raw)) {
        throw Error(ErrorCode::kEncoding, "not valid UTF-8");
      }
      if (raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
      const std::string hash = detail::sha256_hex(raw);
      const std::string source = fs::weakly_canonical(fs::absolute(file)).string();

      auto existing = std::find_if(next.documents.begin(), next.documents.end(),
                                   [&](const DocumentRecord& r) { return r.source_path == source; });
      if (existing != next.documents.end() && existing->content_hash == hash) {
        report.unchanged.push_back(*existing);
        continue;
      }

      std::string text = strip_gutenberg_boilerplate(raw);
      TokenStream tokens = tokenize(text);
      if (tokens.total_count() == 0) {
        throw Error(ErrorCode::kUndefined, "document has zero tokens");
      }

      DocumentRecord record;
      if (existing != next.documents.end()) {
        record.doc_id = existing->doc_id;
      } else {
        std::string base = slugify(file.stem().string());
        if (base.empty()) base = "doc";
        record.doc_id = base;
        for (int n = 2; next.find(record.doc_id) != nullptr; ++n) {
          record.doc_id = base + "-" + std::to_string(n);
        }
      }
      record.title = gutenberg_title(raw).value_or(file.stem().string());
      record.collection = collection;
      record.source_path = source;
      record.content_hash = hash;
      record.token_count = tokens.total_count();
      record.ingested_at = utc_now();
      const std::string stem = record.doc_id + "." + hash.substr(0, 16);
      record.profile_file = "docs/" + stem + ".json";
      record.text_file = "texts/" + stem + ".txt";

      const EmotionProfile profile = analyze(tokens, *state_->lexicon, record.doc_id);
      write_file_atomic(state_->dir / record.text_file, text);
      write_file_atomic(state_->dir / record.profile_file,
                        codec::profile_to_storage(profile).dump() + "\n");

      if (existing != next.documents.end()) {
        superseded.push_back(state_->dir / existing->profile_file);
        superseded.push_back(state_->dir / existing->text_file);
        *existing = record;
      } else {
        next.documents.push_back(record);
      }
      report.added.push_back(std::move(record));
    } catch (const Error& e) {
      spdlog::warn("ingest {}: {}", file.string(), e.what());
      report.failures.push_back({file.string(), e.code(), e.what()});
    } catch (const fs::filesystem_error& e) {
      spdlog::warn("ingest {}: {}", file.string(), e.what());
      report.failures.push_back({file.string(), ErrorCode::kIo, e.what()});
    }
  }

  if (!report.added.empty()) {
    state_->commit(std::move(next));
    for (const auto& old : superseded) {
      std::error_code rm;
      fs::remove(old, rm);
    }
  }
  return report;
}

std::shared_ptr<const EmotionProfile> Index::profile(std::string_view doc_id) const {
  const auto snap = state_->snapshot();
  const DocumentRecord* rec = snap->find(doc_id);
  if (!rec) throw Error(ErrorCode::kNotFound, "unknown document '" + std::string(doc_id) + "'");
  {
    std::lock_guard lock(state_->cache_mutex);
    if (auto it = state_->profile_cache.find(rec->profile_file); it != state_->profile_cache.end()) {
      return it->second;
    }
  }
  const fs::path path = state_->dir / rec->profile_file;
  std::shared_ptr<const EmotionProfile> loaded;
  try {
    loaded = std::make_shared<const EmotionProfile>(
        codec::profile_from_storage(json::parse(read_file(path))));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "corrupt profile " + path.string() + ": " + e.what());
  }
  std::lock_guard lock(state_->cache_mutex);
  state_->profile_cache.emplace(rec->profile_file, loaded);
  return loaded;
}

TokenStream Index::tokens(std::string_view doc_id) const {
  const auto snap = state_->snapshot();
  const DocumentRecord* rec = snap->find(doc_id);
  if (!rec) throw Error(ErrorCode::kNotFound, "unknown document '" + std::string(doc_id) + "'");
  return tokenize(read_file(state_->dir / rec->text_file));
}

void Index::store_entity_timeline(const EntityTimeline& timeline) {
  std::lock_guard write_lock(state_->write_mutex);
  std::error_code ec;
  fs::create_directories(state_->dir / "entities", ec);
  const auto name = entity_file_name(unicode::fold_case(timeline.target));
  write_file_atomic(state_->dir / "entities" / name, codec::entity_view(timeline).dump(2) + "\n");
}

std::optional<EntityTimeline> Index::entity_timeline(std::string_view word) const {
  const fs::path path = state_->dir / "entities" / entity_file_name(unicode::fold_case(word));
  if (!fs::exists(path)) return std::nullopt;
  try {
    return codec::entity_from_view(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "corrupt entity file " + path.string() + ": " + e.what());
  }
}

}  // namespace affectlens
