#pragma once

// JSON shapes shared by the CLI tree output, the HTTP service and the
// on-disk index. Internal to the core library.

#include <json.hpp>

#include "affectlens/corpus_stats.hpp"
#include "affectlens/ngram.hpp"
#include "affectlens/salience.hpp"
#include "affectlens/serialize.hpp"
#include "affectlens/textproc.hpp"
#include "affectlens/timeline.hpp"

namespace affectlens::codec {

using nlohmann::json;

json profile_view(const EmotionProfile& profile, const DensityConfig& cfg);
json timeline_view(const TimelineSeries& series);
json cloud_view(const std::vector<SalienceEntry>& cloud, AffectCategory category);
json comparison_view(const EmotionProfile& a, const EmotionProfile& b, std::size_t cloud_size);
json entity_view(const EntityTimeline& timeline);
json summaries_view(const std::vector<CorpusSummary>& summaries);
json summary_view(const CorpusSummary& summary);
json test_view(const TwoSampleTest& test);
json tests_view(std::string_view corpus_a, std::string_view corpus_b,
                const std::vector<CategoryTests>& tests);
json histogram_view(const HistogramSpec& spec);
json ranking_view(const std::vector<RankedDocument>& ranking, AffectCategory category);

// Lossless forms used by the index.
json profile_to_storage(const EmotionProfile& profile);
EmotionProfile profile_from_storage(const json& j);
EntityTimeline entity_from_view(const json& j);

}  // namespace affectlens::codec
