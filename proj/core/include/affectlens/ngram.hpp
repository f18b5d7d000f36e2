#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/lexicon.hpp"

namespace affectlens {

inline constexpr std::size_t kNgramOrder = 5;

struct NgramRecord {
  std::array<std::string, kNgramOrder> tokens;
  int year = 0;
  std::uint64_t match_count = 0;
};

// Lowercases a 5-gram token and strips a Google part-of-speech suffix such
// as "_NOUN" or "_." (v2 corpus layout). Bare tags like "_START_" are kept.
std::string normalize_ngram_token(std::string_view token);

// Parses `w1 w2 w3 w4 w5<TAB>year<TAB>match_count[<TAB>...]`. Fields after
// match_count are ignored. Throws Error(kParse) on a wrong token or field
// count, a non-numeric year or count, a year outside [0, 2100] or a zero
// match_count.
NgramRecord parse_5gram_line(std::string_view line);

enum class EntityDenominator {
  kNonTargetTokens,  // every non-target position of a matching 5-gram
  // Emotions over non-target positions carrying an emotion, polarities over
  // positions carrying a polarity.
  kEmotionTokens,
};

std::string_view to_string(EntityDenominator d) noexcept;
EntityDenominator parse_entity_denominator(std::string_view text);

struct ScanOptions {
  std::vector<std::string> targets;
  int min_year = 1800;
  int bin_width = 5;
  EntityDenominator denominator = EntityDenominator::kNonTargetTokens;
};

struct EntityBin {
  int bin_start = 0;
  PerCategory<double> percentage;      // 100 * weight[c] / denominator weight
  std::uint64_t support_weight = 0;    // denominator weight
  bool zero_support = false;
  PerCategory<std::uint64_t> weight;   // match_count-weighted category hits
  std::uint64_t non_target_weight = 0;
  std::uint64_t emotion_weight = 0;
  std::uint64_t polar_weight = 0;
  std::uint64_t records = 0;
};

struct EntityTimeline {
  std::string target;
  EntityDenominator denominator = EntityDenominator::kNonTargetTokens;
  int bin_width = 5;
  std::vector<EntityBin> bins;  // ascending; gaps between used bins appear with zero support
};

struct ScanError {
  std::uint64_t line = 0;
  std::string message;
};

struct ScanStats {
  std::uint64_t lines = 0;
  std::uint64_t bytes = 0;
  std::uint64_t parse_errors = 0;
  std::uint64_t matched_records = 0;
  std::vector<ScanError> first_errors;  // at most kMaxRecordedErrors

  static constexpr std::size_t kMaxRecordedErrors = 32;

  void merge(const ScanStats& other);
};

// Accumulates match_count-weighted category hits of the words co-occurring
// with each target in 5-grams, per year bin. Partial scanners over disjoint
// shards merge exactly: all sums are integers.
//
// The lexicon must outlive the scanner.
class EntityScanner {
 public:
  EntityScanner(const EmotionLexicon& lexicon, ScanOptions options);

  // Adds a parsed record.
  void add(const NgramRecord& record);

  // Parses and adds one line without allocating on the hot path. A
  // malformed line is counted and recorded in stats(), not thrown.
  void add_line(std::string_view line);

  // Streams every line of `in`.
  void scan(std::istream& in);

  // Streams a plain or gzip-compressed file.
  void scan_file(const std::filesystem::path& path);

  void merge(const EntityScanner& other);

  std::vector<EntityTimeline> timelines() const;
  const ScanStats& stats() const noexcept { return stats_; }
  const ScanOptions& options() const noexcept { return options_; }

 private:
  struct Accumulator {
    PerCategory<std::uint64_t> weight;
    std::uint64_t non_target = 0;
    std::uint64_t emotion = 0;
    std::uint64_t polar = 0;
    std::uint64_t records = 0;
  };

  void accumulate(const std::array<std::string_view, kNgramOrder>& folded, int year,
                  std::uint64_t match_count);
  int bin_start(int year) const noexcept;

  const EmotionLexicon* lexicon_;
  ScanOptions options_;
  // [target index] -> bin start -> sums
  std::vector<std::map<int, Accumulator>> bins_;
  ScanStats stats_;
  std::array<std::string, kNgramOrder> scratch_;
};

// Scans the shards with `workers` threads, one scanner per worker, and merges
// the partial sums.
EntityScanner scan_shards(const EmotionLexicon& lexicon, const ScanOptions& options,
                          const std::vector<std::filesystem::path>& shards,
                          unsigned workers = 1);

// One shard path per line; '#' starts a comment; relative paths resolve
// against the manifest's directory.
std::vector<std::filesystem::path> read_shard_manifest(const std::filesystem::path& manifest);

}  // namespace affectlens
