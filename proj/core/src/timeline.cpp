#include "affectlens/timeline.hpp"

#include <string>

#include "affectlens/error.hpp"

namespace affectlens {

namespace {

// Prefix sums over the token stream: prefix[i] counts hits in tokens [0, i).
using Prefix = std::vector<std::uint64_t>;

std::uint64_t window_sum(const Prefix& prefix, std::size_t begin, std::size_t end) {
  return prefix[end] - prefix[begin];
}

}  // namespace

std::string_view to_string(TimelineMode mode) noexcept {
  return mode == TimelineMode::kShareOfEmotionTokens ? "emotion" : "all";
}

TimelineMode parse_timeline_mode(std::string_view text) {
  if (text == "emotion" || text == "emotion-tokens") return TimelineMode::kShareOfEmotionTokens;
  if (text == "all" || text == "all-tokens") return TimelineMode::kShareOfAllTokens;
  throw Error(ErrorCode::kUsage,
              "unknown timeline mode '" + std::string(text) + "' (expected emotion|all)");
}

TimelineSeries timeline(const TokenStream& tokens, const EmotionLexicon& lexicon,
                        const TimelineOptions& options, std::string doc_id) {
  const std::size_t n = tokens.total_count();
  if (options.window_tokens == 0 || options.stride_tokens == 0) {
    throw Error(ErrorCode::kUsage, "timeline window and stride must be at least 1");
  }
  if (options.categories.empty()) {
    throw Error(ErrorCode::kUsage, "timeline needs at least one category");
  }
  if (options.window_tokens > n) {
    throw Error(ErrorCode::kUsage, "timeline window of " + std::to_string(options.window_tokens) +
                                       " tokens exceeds document length " + std::to_string(n));
  }

  const std::size_t k = options.categories.size();
  std::vector<Prefix> hits(k, Prefix(n + 1, 0));
  Prefix emotion(n + 1, 0);
  Prefix polar(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const CategorySet cats = lexicon.associations(tokens.tokens[i]);
    for (std::size_t j = 0; j < k; ++j) {
      hits[j][i + 1] = hits[j][i] + (cats.contains(options.categories[j]) ? 1 : 0);
    }
    emotion[i + 1] = emotion[i] + (cats.has_emotion() ? 1 : 0);
    polar[i + 1] = polar[i] + (cats.has_polarity() ? 1 : 0);
  }

  TimelineSeries series;
  series.doc_id = std::move(doc_id);
  series.window_tokens = options.window_tokens;
  series.stride_tokens = options.stride_tokens;
  series.mode = options.mode;
  series.categories = options.categories;

  const std::size_t w = options.window_tokens;
  for (std::size_t begin = 0; begin + w <= n; begin += options.stride_tokens) {
    const std::size_t end = begin + w;
    TimelinePoint point;
    point.progress = (static_cast<double>(begin) + static_cast<double>(w) / 2.0) /
                     static_cast<double>(n);
    point.values.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      const AffectCategory c = options.categories[j];
      std::uint64_t denom = w;
      if (options.mode == TimelineMode::kShareOfEmotionTokens) {
        denom = is_emotion(c) ? window_sum(emotion, begin, end) : window_sum(polar, begin, end);
      }
      const std::uint64_t count = window_sum(hits[j], begin, end);
      point.values.push_back(denom == 0 ? 0.0
                                        : 100.0 * static_cast<double>(count) /
                                              static_cast<double>(denom));
    }
    series.points.push_back(std::move(point));
  }
  return series;
}

}  // namespace affectlens
