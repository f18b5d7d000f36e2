#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/lexicon.hpp"

namespace affectlens {

// Bumped whenever tokenize() changes behaviour; stored in index manifests.
inline constexpr std::string_view kTokenizerVersion = "letters-apostrophe-v1";

struct TokenStream {
  std::vector<std::string> tokens;

  std::size_t total_count() const noexcept { return tokens.size(); }
};

// Returns the text between the Project Gutenberg "*** START OF" and
// "*** END OF" marker lines. With only a START marker the text after it is
// kept; with only an END marker the text before it. Either degenerate case
// logs a warning. Without markers the input is returned unchanged.
std::string strip_gutenberg_boilerplate(std::string_view text);

// Splits on every code point that is not a letter. An apostrophe (ASCII or
// typographic) is kept, as '\'', only when a letter sits on both sides.
// Tokens are lowercased. Digits and punctuation never appear in tokens.
TokenStream tokenize(std::string_view text);

struct EmotionProfile {
  std::string doc_id;
  std::uint64_t total_tokens = 0;
  PerCategory<std::uint64_t> category_counts;
  // Tokens associated with at least one of the eight emotions.
  std::uint64_t emotion_token_count = 0;
  // Tokens associated with at least one polarity.
  std::uint64_t polar_token_count = 0;
  PerCategory<std::map<std::string, std::uint64_t>> word_counts_per_category;
  // Frequency of every token type in the document, lexicon word or not.
  std::map<std::string, std::uint64_t> term_counts;

  friend bool operator==(const EmotionProfile&, const EmotionProfile&) = default;
};

struct DensityConfig {
  std::uint64_t window = 10'000;  // densities are reported per this many tokens
};

EmotionProfile analyze(const TokenStream& tokens, const EmotionLexicon& lexicon,
                       std::string doc_id = {});

// category_counts[c] / emotion_token_count, as a fraction. Zero when the
// document has no emotion tokens. Throws Error(kUsage) for a polarity.
double emotion_percentage(const EmotionProfile& profile, AffectCategory c);

// category_counts[c] / polar_token_count for c in {negative, positive}.
// Throws Error(kUsage) for an emotion.
double polarity_percentage(const EmotionProfile& profile, AffectCategory c);

// Occurrences of c per cfg.window tokens. Throws Error(kUndefined) for an
// empty document and Error(kUsage) when cfg.window is zero.
double emotion_density(const EmotionProfile& profile, AffectCategory c,
                       const DensityConfig& cfg = {});

// Indexed by index_of(emotion).
using EmotionVector = std::array<double, kEmotionCount>;

// 100 * (pct1(e) - pct2(e)) for each emotion e: signed percentage points.
// Throws Error(kUndefined) if either profile has no emotion tokens.
EmotionVector diff_percentages(const EmotionProfile& p1, const EmotionProfile& p2);

}  // namespace affectlens
