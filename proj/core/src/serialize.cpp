#include "affectlens/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "affectlens/error.hpp"
#include "json_codec.hpp"

namespace affectlens {

namespace codec {

namespace {

json with_schema(std::string_view kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

json entry_view(const SalienceEntry& e) {
  return {{"word", e.word}, {"score", e.score}, {"weight", e.weight}, {"f1", e.f1},
          {"f2", e.f2},     {"n1", e.n1},       {"n2", e.n2}};
}

}  // namespace

json profile_view(const EmotionProfile& p, const DensityConfig& cfg) {
  json j = with_schema("profile");
  j["doc_id"] = p.doc_id;
  j["total_tokens"] = p.total_tokens;
  j["emotion_token_count"] = p.emotion_token_count;
  j["polar_token_count"] = p.polar_token_count;
  j["density_window"] = cfg.window;
  json cats = json::object();
  for (auto c : kAllCategories) {
    json entry;
    entry["count"] = p.category_counts[c];
    if (is_emotion(c)) {
      entry["percentage"] = 100.0 * emotion_percentage(p, c);
    } else {
      entry["percentage"] = 100.0 * polarity_percentage(p, c);
      entry["percentage_of_emotion_tokens"] =
          p.emotion_token_count == 0
              ? 0.0
              : 100.0 * static_cast<double>(p.category_counts[c]) /
                    static_cast<double>(p.emotion_token_count);
    }
    entry["density"] = p.total_tokens == 0 ? json(nullptr) : json(emotion_density(p, c, cfg));
    cats[std::string(to_string(c))] = std::move(entry);
  }
  j["categories"] = std::move(cats);
  return j;
}

json timeline_view(const TimelineSeries& s) {
  json j = with_schema("timeline");
  j["doc_id"] = s.doc_id;
  j["window_tokens"] = s.window_tokens;
  j["stride_tokens"] = s.stride_tokens;
  j["mode"] = to_string(s.mode);
  json series = json::object();
  for (std::size_t k = 0; k < s.categories.size(); ++k) {
    json points = json::array();
    for (const auto& p : s.points) points.push_back({p.progress, p.values[k]});
    series[std::string(to_string(s.categories[k]))] = std::move(points);
  }
  j["series"] = std::move(series);
  return j;
}

json cloud_view(const std::vector<SalienceEntry>& cloud, AffectCategory category) {
  json j = with_schema("cloud");
  j["category"] = to_string(category);
  json words = json::array();
  for (const auto& e : cloud) words.push_back(entry_view(e));
  j["words"] = std::move(words);
  return j;
}

json comparison_view(const EmotionProfile& a, const EmotionProfile& b, std::size_t cloud_size) {
  json j = with_schema("comparison");
  j["a"] = a.doc_id;
  j["b"] = b.doc_id;
  const auto diff = diff_percentages(a, b);
  json bars = json::object();
  for (auto e : kEmotions) bars[std::string(to_string(e))] = diff[index_of(e)];
  j["diff_percentages"] = std::move(bars);
  json clouds = json::object();
  for (auto e : kEmotions) {
    json words = json::array();
    for (const auto& entry : salience_cloud(a, b, e, cloud_size)) words.push_back(entry_view(entry));
    clouds[std::string(to_string(e))] = std::move(words);
  }
  j["clouds"] = std::move(clouds);
  return j;
}

json entity_view(const EntityTimeline& tl) {
  json j = with_schema("entity_timeline");
  j["target"] = tl.target;
  j["denominator"] = to_string(tl.denominator);
  j["bin_width"] = tl.bin_width;
  json bins = json::array();
  for (const auto& b : tl.bins) {
    json pct = json::object();
    json weight = json::object();
    for (auto c : kAllCategories) {
      pct[std::string(to_string(c))] = b.percentage[c];
      weight[std::string(to_string(c))] = b.weight[c];
    }
    bins.push_back({{"bin_start", b.bin_start},
                    {"support_weight", b.support_weight},
                    {"zero_support", b.zero_support},
                    {"non_target_weight", b.non_target_weight},
                    {"emotion_weight", b.emotion_weight},
                    {"polar_weight", b.polar_weight},
                    {"records", b.records},
                    {"percentage", std::move(pct)},
                    {"weight", std::move(weight)}});
  }
  j["bins"] = std::move(bins);
  return j;
}

EntityTimeline entity_from_view(const json& j) {
  EntityTimeline tl;
  tl.target = j.at("target").get<std::string>();
  tl.denominator = parse_entity_denominator(j.at("denominator").get<std::string>());
  tl.bin_width = j.at("bin_width").get<int>();
  for (const auto& b : j.at("bins")) {
    EntityBin bin;
    bin.bin_start = b.at("bin_start").get<int>();
    bin.support_weight = b.at("support_weight").get<std::uint64_t>();
    bin.zero_support = b.at("zero_support").get<bool>();
    bin.non_target_weight = b.at("non_target_weight").get<std::uint64_t>();
    bin.emotion_weight = b.at("emotion_weight").get<std::uint64_t>();
    bin.polar_weight = b.at("polar_weight").get<std::uint64_t>();
    bin.records = b.at("records").get<std::uint64_t>();
    for (auto c : kAllCategories) {
      const std::string key(to_string(c));
      bin.percentage[c] = b.at("percentage").at(key).get<double>();
      bin.weight[c] = b.at("weight").at(key).get<std::uint64_t>();
    }
    tl.bins.push_back(bin);
  }
  return tl;
}

json summary_view(const CorpusSummary& s) {
  json row;
  row["corpus_id"] = s.corpus_id;
  row["doc_count"] = s.doc_count;
  row["density_window"] = s.density_window;
  row["single_document"] = s.single_document;
  json cats = json::object();
  for (auto c : kAllCategories) {
    cats[std::string(to_string(c))] = {{"mean", s.densities[c].mean}, {"sd", s.densities[c].sd}};
  }
  row["categories"] = std::move(cats);
  return row;
}

json summaries_view(const std::vector<CorpusSummary>& summaries) {
  json j = with_schema("corpus_summary");
  json rows = json::array();
  for (const auto& s : summaries) rows.push_back(summary_view(s));
  j["corpora"] = std::move(rows);
  return j;
}

json test_view(const TwoSampleTest& t) {
  json j = {{"kind", to_string(t.kind)}, {"df1", t.df1}, {"p_value", t.p_value}};
  // +-inf has no JSON spelling.
  j["statistic"] = std::isfinite(t.statistic) ? json(t.statistic)
                                              : json(t.statistic > 0 ? "inf" : "-inf");
  if (t.kind == TestKind::kVarianceRatio) j["df2"] = t.df2;
  return j;
}

json tests_view(std::string_view corpus_a, std::string_view corpus_b,
                const std::vector<CategoryTests>& tests) {
  json j = with_schema("corpus_tests");
  j["a"] = corpus_a;
  j["b"] = corpus_b;
  json cats = json::object();
  for (const auto& t : tests) {
    json entry;
    entry["mean_difference"] = test_view(t.mean_difference);
    entry["variance_ratio"] = t.variance_ratio ? test_view(*t.variance_ratio) : json(nullptr);
    cats[std::string(to_string(t.category))] = std::move(entry);
  }
  j["categories"] = std::move(cats);
  return j;
}

json histogram_view(const HistogramSpec& spec) {
  json j = with_schema("histogram");
  j["category"] = to_string(spec.category);
  j["bin_width"] = spec.bin_width;
  json bins = json::array();
  for (const auto& b : spec.bins) {
    bins.push_back({{"bin", b.index},
                    {"lower", static_cast<double>(b.index - 1) * spec.bin_width},
                    {"upper", static_cast<double>(b.index) * spec.bin_width},
                    {"count", b.count}});
  }
  j["bins"] = std::move(bins);
  j["total"] = spec.total();
  return j;
}

json ranking_view(const std::vector<RankedDocument>& ranking, AffectCategory category) {
  json j = with_schema("ranking");
  j["category"] = to_string(category);
  json docs = json::array();
  std::size_t rank = 1;
  for (const auto& r : ranking) {
    docs.push_back({{"rank", rank++}, {"doc_id", r.doc_id}, {"density", r.density}});
  }
  j["documents"] = std::move(docs);
  return j;
}

json profile_to_storage(const EmotionProfile& p) {
  json j;
  j["doc_id"] = p.doc_id;
  j["total_tokens"] = p.total_tokens;
  j["emotion_token_count"] = p.emotion_token_count;
  j["polar_token_count"] = p.polar_token_count;
  json counts = json::object();
  json words = json::object();
  for (auto c : kAllCategories) {
    const std::string key(to_string(c));
    counts[key] = p.category_counts[c];
    json list = json::array();
    for (const auto& kv : p.word_counts_per_category[c]) list.push_back(kv.first);
    words[key] = std::move(list);
  }
  j["category_counts"] = std::move(counts);
  j["category_words"] = std::move(words);
  j["term_counts"] = p.term_counts;
  return j;
}

EmotionProfile profile_from_storage(const json& j) {
  EmotionProfile p;
  p.doc_id = j.at("doc_id").get<std::string>();
  p.total_tokens = j.at("total_tokens").get<std::uint64_t>();
  p.emotion_token_count = j.at("emotion_token_count").get<std::uint64_t>();
  p.polar_token_count = j.at("polar_token_count").get<std::uint64_t>();
  p.term_counts = j.at("term_counts").get<std::map<std::string, std::uint64_t>>();
  for (auto c : kAllCategories) {
    const std::string key(to_string(c));
    p.category_counts[c] = j.at("category_counts").at(key).get<std::uint64_t>();
    for (const auto& w : j.at("category_words").at(key)) {
      const auto word = w.get<std::string>();
      auto it = p.term_counts.find(word);
      if (it == p.term_counts.end()) {
        throw Error(ErrorCode::kParse, "stored profile of '" + p.doc_id +
                                           "' lists category word '" + word +
                                           "' without a term count");
      }
      p.word_counts_per_category[c].emplace(word, it->second);
    }
  }
  return p;
}

}  // namespace codec

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Shortest text that reads back to the same double.
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "table") return OutputFormat::kTable;
  if (text == "tree") return OutputFormat::kTree;
  throw Error(ErrorCode::kUsage, "unknown format '" + std::string(text) + "' (expected table|tree)");
}

std::string render_profile(const EmotionProfile& p, const DensityConfig& cfg,
                           OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::profile_view(p, cfg));
  std::ostringstream out;
  out << "doc_id\ttotal_tokens\tcategory\tcount\tpercentage\tdensity\n";
  for (auto c : kAllCategories) {
    const double pct = is_emotion(c) ? emotion_percentage(p, c) : polarity_percentage(p, c);
    out << p.doc_id << '\t' << p.total_tokens << '\t' << to_string(c) << '\t'
        << p.category_counts[c] << '\t' << fmt_double(100.0 * pct) << '\t'
        << (p.total_tokens == 0 ? std::string("NA") : fmt_double(emotion_density(p, c, cfg)))
        << '\n';
  }
  return out.str();
}

std::string render_timeline(const TimelineSeries& s, OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::timeline_view(s));
  std::ostringstream out;
  out << "doc_id\tcategory\tprogress\tvalue\n";
  for (std::size_t k = 0; k < s.categories.size(); ++k) {
    for (const auto& p : s.points) {
      out << s.doc_id << '\t' << to_string(s.categories[k]) << '\t' << fmt_double(p.progress)
          << '\t' << fmt_double(p.values[k]) << '\n';
    }
  }
  return out.str();
}

std::string render_cloud(const std::vector<SalienceEntry>& cloud, AffectCategory category,
                         OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::cloud_view(cloud, category));
  std::ostringstream out;
  out << "category\tword\tscore\tweight\n";
  for (const auto& e : cloud) {
    out << to_string(category) << '\t' << e.word << '\t' << fmt_double(e.score) << '\t'
        << fmt_double(e.weight) << '\n';
  }
  return out.str();
}

std::string render_comparison(const EmotionProfile& a, const EmotionProfile& b,
                              std::size_t cloud_size, OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::comparison_view(a, b, cloud_size));
  std::ostringstream out;
  out << "emotion\tdiff_percentage_points\n";
  const auto diff = diff_percentages(a, b);
  for (auto e : kEmotions) out << to_string(e) << '\t' << fmt_double(diff[index_of(e)]) << '\n';
  out << '\n' << "category\tword\tscore\tweight\n";
  for (auto e : kEmotions) {
    for (const auto& entry : salience_cloud(a, b, e, cloud_size)) {
      out << to_string(e) << '\t' << entry.word << '\t' << fmt_double(entry.score) << '\t'
          << fmt_double(entry.weight) << '\n';
    }
  }
  return out.str();
}

std::string render_entity_timelines(const std::vector<EntityTimeline>& timelines,
                                    OutputFormat format) {
  if (format == OutputFormat::kTree) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "entity_timelines";
    j["timelines"] = nlohmann::json::array();
    for (const auto& tl : timelines) j["timelines"].push_back(codec::entity_view(tl));
    return dump(j);
  }
  std::ostringstream out;
  out << "target\tbin_start\tcategory\tpercentage\tsupport_weight\n";
  for (const auto& tl : timelines) {
    for (const auto& b : tl.bins) {
      for (auto c : kAllCategories) {
        out << tl.target << '\t' << b.bin_start << '\t' << to_string(c) << '\t'
            << fmt_double(b.percentage[c]) << '\t' << b.support_weight << '\n';
      }
    }
  }
  return out.str();
}

std::string render_summaries(const std::vector<CorpusSummary>& summaries, OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::summaries_view(summaries));
  std::ostringstream out;
  out << "corpus\tdocs";
  for (auto c : kAllCategories) out << '\t' << to_string(c) << "_mean\t" << to_string(c) << "_sd";
  out << '\n';
  for (const auto& s : summaries) {
    out << s.corpus_id << '\t' << s.doc_count;
    for (auto c : kAllCategories) {
      out << '\t' << fmt_double(s.densities[c].mean) << '\t' << fmt_double(s.densities[c].sd);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_tests(std::string_view corpus_a, std::string_view corpus_b,
                         const std::vector<CategoryTests>& tests, OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::tests_view(corpus_a, corpus_b, tests));
  std::ostringstream out;
  out << "category\ttest\tstatistic\tdf1\tdf2\tp_value\n";
  auto row = [&](AffectCategory c, const TwoSampleTest& t) {
    out << to_string(c) << '\t' << to_string(t.kind) << '\t' << fmt_double(t.statistic) << '\t'
        << fmt_double(t.df1) << '\t' << fmt_double(t.df2) << '\t' << fmt_double(t.p_value)
        << '\n';
  };
  for (const auto& t : tests) {
    row(t.category, t.mean_difference);
    if (t.variance_ratio) row(t.category, *t.variance_ratio);
  }
  return out.str();
}

std::string render_histogram(const HistogramSpec& spec, OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::histogram_view(spec));
  std::ostringstream out;
  out << "category\tbin\tlower\tupper\tcount\n";
  for (const auto& b : spec.bins) {
    out << to_string(spec.category) << '\t' << b.index << '\t'
        << fmt_double(static_cast<double>(b.index - 1) * spec.bin_width) << '\t'
        << fmt_double(static_cast<double>(b.index) * spec.bin_width) << '\t' << b.count << '\n';
  }
  return out.str();
}

std::string render_ranking(const std::vector<RankedDocument>& ranking, AffectCategory category,
                           OutputFormat format) {
  if (format == OutputFormat::kTree) return dump(codec::ranking_view(ranking, category));
  std::ostringstream out;
  out << "rank\tdoc_id\t" << to_string(category) << "_density\n";
  std::size_t rank = 1;
  for (const auto& r : ranking) out << rank++ << '\t' << r.doc_id << '\t' << fmt_double(r.density) << '\n';
  return out.str();
}

}  // namespace affectlens
