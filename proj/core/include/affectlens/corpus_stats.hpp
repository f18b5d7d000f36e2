#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/textproc.hpp"

namespace affectlens {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample (n - 1) standard deviation
};

struct CorpusSummary {
  std::string corpus_id;
  std::size_t doc_count = 0;
  std::uint64_t density_window = 10'000;
  PerCategory<MeanSd> densities;
  bool single_document = false;  // sd reported as 0
};

// Per-category mean and sample standard deviation of the documents'
// densities. Throws Error(kUndefined) for an empty corpus or a document with
// no tokens. A single document yields sd = 0 and a warning.
CorpusSummary corpus_summary(std::span<const EmotionProfile> profiles,
                             const DensityConfig& cfg = {}, std::string corpus_id = {});

// Densities of one category, in input order.
std::vector<double> densities_of(std::span<const EmotionProfile> profiles,
                                 AffectCategory category, const DensityConfig& cfg = {});

enum class TestKind { kMeanDifference, kVarianceRatio };

struct TwoSampleTest {
  TestKind kind = TestKind::kMeanDifference;
  double statistic = 0.0;
  double df1 = 0.0;  // Welch df for the t-test; numerator df for the F-test
  double df2 = 0.0;  // denominator df for the F-test; 0 for the t-test
  double p_value = 1.0;
};

std::string_view to_string(TestKind kind) noexcept;

// Welch's unequal-variance t-test, two-sided. Throws Error(kUsage) when a
// sample has fewer than two values. If both samples have zero variance the
// statistic is 0 (p = 1) for equal means and +-inf (p = 0) otherwise.
TwoSampleTest mean_difference_test(std::span<const double> a, std::span<const double> b);

// Two-sided F-test of var(a) / var(b). Throws Error(kUsage) for samples
// smaller than two and Error(kUndefined) for a zero variance.
TwoSampleTest variance_ratio_test(std::span<const double> a, std::span<const double> b);

struct HistogramBin {
  std::size_t index = 0;  // 1-based; covers [(index-1)*width, index*width)
  std::size_t count = 0;
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct HistogramSpec {
  AffectCategory category = AffectCategory::kNegative;
  double bin_width = 100.0;
  std::vector<HistogramBin> bins;  // bins 1..last non-empty bin

  std::size_t total() const noexcept;
};

// Throws Error(kUsage) for a non-positive width or a negative / non-finite
// density.
HistogramSpec histogram(std::span<const double> densities, double bin_width = 100.0,
                        AffectCategory category = AffectCategory::kNegative);

struct RankedDocument {
  std::string doc_id;
  double density = 0.0;
  friend bool operator==(const RankedDocument&, const RankedDocument&) = default;
};

// Ascending by density, ties by doc_id.
std::vector<RankedDocument> rank_by_density(std::span<const EmotionProfile> profiles,
                                            AffectCategory category,
                                            const DensityConfig& cfg = {});

}  // namespace affectlens
