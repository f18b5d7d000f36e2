#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affectlens/corpus_stats.hpp"
#include "affectlens/ngram.hpp"
#include "affectlens/salience.hpp"
#include "affectlens/textproc.hpp"
#include "affectlens/timeline.hpp"

namespace affectlens {

// "table" is tab-separated text with one header row; "tree" is JSON carrying
// a "schema_version" field. Both layouts are documented in the README.
enum class OutputFormat { kTable, kTree };

inline constexpr int kSchemaVersion = 1;

OutputFormat parse_output_format(std::string_view text);

std::string render_profile(const EmotionProfile& profile, const DensityConfig& cfg,
                           OutputFormat format);
std::string render_timeline(const TimelineSeries& series, OutputFormat format);
std::string render_cloud(const std::vector<SalienceEntry>& cloud, AffectCategory category,
                         OutputFormat format);

// Difference bars for the eight emotions plus one salience cloud per emotion.
std::string render_comparison(const EmotionProfile& a, const EmotionProfile& b,
                              std::size_t cloud_size, OutputFormat format);

std::string render_entity_timelines(const std::vector<EntityTimeline>& timelines,
                                    OutputFormat format);

// Rows are corpora, columns mean / sd per category.
std::string render_summaries(const std::vector<CorpusSummary>& summaries, OutputFormat format);

struct CategoryTests {
  AffectCategory category;
  TwoSampleTest mean_difference;
  std::optional<TwoSampleTest> variance_ratio;  // absent when a variance is zero
};

std::string render_tests(std::string_view corpus_a, std::string_view corpus_b,
                         const std::vector<CategoryTests>& tests, OutputFormat format);

std::string render_histogram(const HistogramSpec& spec, OutputFormat format);
std::string render_ranking(const std::vector<RankedDocument>& ranking, AffectCategory category,
                           OutputFormat format);

}  // namespace affectlens
