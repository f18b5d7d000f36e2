#include "affectlens/corpus_stats.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "affectlens/error.hpp"

namespace affectlens {

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator
  std::size_t n = 0;
};

// Two-pass mean / variance.
Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(m.n);
  if (m.n < 2) return m;
  double ss = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    ss += d * d;
    comp += d;
  }
  // Corrected two-pass: removes the rounding error left in the mean.
  m.variance = (ss - comp * comp / static_cast<double>(m.n)) / static_cast<double>(m.n - 1);
  if (m.variance < 0.0) m.variance = 0.0;
  return m;
}

void require_two(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kUsage,
                std::string(what) + " needs at least two values in each sample");
  }
}

}  // namespace

std::string_view to_string(TestKind kind) noexcept {
  return kind == TestKind::kMeanDifference ? "mean-difference" : "variance-ratio";
}

std::vector<double> densities_of(std::span<const EmotionProfile> profiles,
                                 AffectCategory category, const DensityConfig& cfg) {
  std::vector<double> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.push_back(emotion_density(p, category, cfg));
  return out;
}

CorpusSummary corpus_summary(std::span<const EmotionProfile> profiles, const DensityConfig& cfg,
                             std::string corpus_id) {
  if (profiles.empty()) {
    throw Error(ErrorCode::kUndefined, "corpus '" + corpus_id + "' has no documents");
  }
  CorpusSummary summary;
  summary.corpus_id = std::move(corpus_id);
  summary.doc_count = profiles.size();
  summary.density_window = cfg.window;
  summary.single_document = profiles.size() == 1;
  if (summary.single_document) {
    spdlog::warn("corpus '{}' has a single document; standard deviations reported as 0",
                 summary.corpus_id);
  }
  for (auto c : kAllCategories) {
    const auto d = densities_of(profiles, c, cfg);
    const auto m = moments(d);
    summary.densities[c] = {m.mean, std::sqrt(m.variance)};
  }
  return summary;
}

TwoSampleTest mean_difference_test(std::span<const double> a, std::span<const double> b) {
  require_two(a, b, "mean_difference_test");
  const auto ma = moments(a);
  const auto mb = moments(b);
  const double na = static_cast<double>(ma.n);
  const double nb = static_cast<double>(mb.n);
  const double va = ma.variance / na;
  const double vb = mb.variance / nb;
  const double se2 = va + vb;
  const double diff = ma.mean - mb.mean;

  TwoSampleTest test;
  test.kind = TestKind::kMeanDifference;
  if (se2 == 0.0) {
    test.df1 = na + nb - 2.0;
    if (diff == 0.0) {
      test.statistic = 0.0;
      test.p_value = 1.0;
    } else {
      test.statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
      test.p_value = 0.0;
    }
    return test;
  }
  test.statistic = diff / std::sqrt(se2);
  // Welch-Satterthwaite.
  test.df1 = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  boost::math::students_t dist(test.df1);
  test.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(test.statistic)));
  test.p_value = std::clamp(test.p_value, 0.0, 1.0);
  return test;
}

TwoSampleTest variance_ratio_test(std::span<const double> a, std::span<const double> b) {
  require_two(a, b, "variance_ratio_test");
  const auto ma = moments(a);
  const auto mb = moments(b);
  if (ma.variance == 0.0 || mb.variance == 0.0) {
    throw Error(ErrorCode::kUndefined, "variance_ratio_test: a sample has zero variance");
  }
  TwoSampleTest test;
  test.kind = TestKind::kVarianceRatio;
  test.statistic = ma.variance / mb.variance;
  test.df1 = static_cast<double>(ma.n - 1);
  test.df2 = static_cast<double>(mb.n - 1);
  boost::math::fisher_f dist(test.df1, test.df2);
  const double lower = boost::math::cdf(dist, test.statistic);
  const double upper = boost::math::cdf(boost::math::complement(dist, test.statistic));
  test.p_value = std::clamp(2.0 * std::min(lower, upper), 0.0, 1.0);
  return test;
}

std::size_t HistogramSpec::total() const noexcept {
  std::size_t n = 0;
  for (const auto& b : bins) n += b.count;
  return n;
}

HistogramSpec histogram(std::span<const double> densities, double bin_width,
                        AffectCategory category) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw Error(ErrorCode::kUsage, "histogram bin width must be positive");
  }
  HistogramSpec spec;
  spec.category = category;
  spec.bin_width = bin_width;
  for (double d : densities) {
    if (!std::isfinite(d) || d < 0.0) {
      throw Error(ErrorCode::kUsage, "histogram densities must be finite and non-negative");
    }
    const auto index = static_cast<std::size_t>(std::floor(d / bin_width)) + 1;
    if (spec.bins.size() < index) {
      const std::size_t old = spec.bins.size();
      spec.bins.resize(index);
      for (std::size_t i = old; i < index; ++i) spec.bins[i].index = i + 1;
    }
    ++spec.bins[index - 1].count;
  }
  return spec;
}

std::vector<RankedDocument> rank_by_density(std::span<const EmotionProfile> profiles,
                                            AffectCategory category, const DensityConfig& cfg) {
  std::vector<RankedDocument> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.push_back({p.doc_id, emotion_density(p, category, cfg)});
  std::sort(out.begin(), out.end(), [](const RankedDocument& a, const RankedDocument& b) {
    if (a.density != b.density) return a.density < b.density;
    return a.doc_id < b.doc_id;
  });
  return out;
}

}  // namespace affectlens
