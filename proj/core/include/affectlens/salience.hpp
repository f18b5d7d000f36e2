#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/textproc.hpp"

namespace affectlens {

struct SalienceEntry {
  std::string word;
  std::uint64_t f1 = 0;
  std::uint64_t f2 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  double score = 0.0;   // f1/n1 - f2/n2
  double weight = 0.0;  // score / max score of the cloud; 0 outside clouds
};

// Relative salience of a word between two texts: the difference of its
// relative frequencies. The word is case-folded before lookup. Throws
// Error(kUndefined) if either profile has no tokens.
SalienceEntry relative_salience(std::string_view word, const EmotionProfile& p1,
                                const EmotionProfile& p2);

inline constexpr std::size_t kDefaultCloudSize = 50;

// The k words of `category` most over-represented in p1 relative to p2,
// by descending score with ties broken by word. Only strictly positive
// scores qualify. Each entry's weight is its score over the top score.
// Throws Error(kUsage) when k is zero.
std::vector<SalienceEntry> salience_cloud(const EmotionProfile& p1,
                                          const EmotionProfile& p2,
                                          AffectCategory category,
                                          std::size_t k = kDefaultCloudSize);

}  // namespace affectlens
