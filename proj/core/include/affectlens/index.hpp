#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "affectlens/error.hpp"
#include "affectlens/lexicon.hpp"
#include "affectlens/ngram.hpp"
#include "affectlens/textproc.hpp"

namespace affectlens {

struct DocumentRecord {
  std::string doc_id;        // stable slug, unique within the index
  std::string title;
  std::string collection;
  std::string source_path;
  std::string content_hash;  // SHA-256 of the source file bytes
  std::uint64_t token_count = 0;
  std::string ingested_at;   // ISO-8601 UTC
  std::string profile_file;  // relative to the index directory
  std::string text_file;

  friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

struct IndexManifest {
  int schema_version = 1;
  std::string lexicon_fingerprint;
  DensityConfig density;
  std::string tokenizer_version;
  std::vector<DocumentRecord> documents;

  const DocumentRecord* find(std::string_view doc_id) const;
  std::vector<const DocumentRecord*> collection(std::string_view tag) const;
  std::vector<std::string> collections() const;
};

struct IngestFailure {
  std::string path;
  ErrorCode code;
  std::string message;
};

struct IngestReport {
  std::vector<DocumentRecord> added;      // new or replaced documents
  std::vector<DocumentRecord> unchanged;  // same path and content hash as before
  std::vector<IngestFailure> failures;
};

// A directory of per-document files plus one manifest.json. Writers are
// serialized; readers work on the last committed manifest snapshot, so
// ingestion never blocks queries.
//
// Layout:
//   manifest.json
//   docs/<doc_id>.<hash>.json   stored profile
//   texts/<doc_id>.<hash>.txt   boilerplate-stripped text
//   entities/<target>.json      stored entity timelines
class Index {
 public:
  // Opens an existing index or initializes an empty one.
  static Index create(const std::filesystem::path& dir,
                      std::shared_ptr<const EmotionLexicon> lexicon, DensityConfig cfg = {});

  // Throws Error(kNotFound) if there is no manifest and
  // Error(kFingerprintMismatch) if the index was built with another lexicon
  // or tokenizer version.
  static Index open(const std::filesystem::path& dir,
                    std::shared_ptr<const EmotionLexicon> lexicon);

  Index(Index&&) noexcept;
  Index& operator=(Index&&) noexcept;
  ~Index();

  // Ingests one file or every regular file of a directory (sorted by name).
  // Failures are reported per file; the batch continues.
  IngestReport ingest(const std::filesystem::path& path, const std::string& collection);

  std::shared_ptr<const IndexManifest> manifest() const;

  // Throws Error(kNotFound) for an unknown id.
  std::shared_ptr<const EmotionProfile> profile(std::string_view doc_id) const;
  TokenStream tokens(std::string_view doc_id) const;

  void store_entity_timeline(const EntityTimeline& timeline);
  std::optional<EntityTimeline> entity_timeline(std::string_view word) const;

  const EmotionLexicon& lexicon() const;
  const std::filesystem::path& directory() const;

 private:
  struct State;
  explicit Index(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

// Lowercase ASCII slug: runs of anything but [a-z0-9] become one '-'.
std::string slugify(std::string_view text);

}  // namespace affectlens
