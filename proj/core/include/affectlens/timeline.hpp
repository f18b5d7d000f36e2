#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/lexicon.hpp"
#include "affectlens/textproc.hpp"

namespace affectlens {

enum class TimelineMode {
  // Emotions over the window's emotion tokens, polarities over its polar tokens.
  kShareOfEmotionTokens,
  // Every category over the window's token count.
  kShareOfAllTokens,
};

struct TimelineOptions {
  std::uint64_t window_tokens = 2'000;
  std::uint64_t stride_tokens = 200;
  std::vector<AffectCategory> categories = {AffectCategory::kJoy,
                                            AffectCategory::kTrust,
                                            AffectCategory::kFear};
  TimelineMode mode = TimelineMode::kShareOfEmotionTokens;
};

struct TimelinePoint {
  double progress = 0.0;               // window centre / total tokens
  std::vector<double> values;          // parallel to TimelineSeries::categories, in [0, 100]
};

struct TimelineSeries {
  std::string doc_id;
  std::uint64_t window_tokens = 0;
  std::uint64_t stride_tokens = 0;
  TimelineMode mode = TimelineMode::kShareOfEmotionTokens;
  std::vector<AffectCategory> categories;
  std::vector<TimelinePoint> points;
};

// Slides a window of window_tokens over the stream in steps of
// stride_tokens, starting at token 0, while the window fits. Throws
// Error(kUsage) for a zero window or stride, an empty category list, or a
// window longer than the document.
TimelineSeries timeline(const TokenStream& tokens, const EmotionLexicon& lexicon,
                        const TimelineOptions& options, std::string doc_id = {});

std::string_view to_string(TimelineMode mode) noexcept;
TimelineMode parse_timeline_mode(std::string_view text);

}  // namespace affectlens
