// affectlens command-line front end.
//
//   affectlens --lexicon NRC.txt analyze hamlet.txt
//   affectlens --lexicon NRC.txt --index idx ingest grimm/ --collection grimm
//   affectlens --lexicon NRC.txt --index idx rank --collection grimm --category negative
//   affectlens --lexicon NRC.txt ngram-scan --targets man,woman shards/*.gz
//
// Exit status is 0 on success, otherwise the numeric ErrorCode.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "affectlens/corpus_stats.hpp"
#include "affectlens/error.hpp"
#include "affectlens/index.hpp"
#include "affectlens/lexicon.hpp"
#include "affectlens/ngram.hpp"
#include "affectlens/salience.hpp"
#include "affectlens/serialize.hpp"
#include "affectlens/service.hpp"
#include "affectlens/textproc.hpp"
#include "affectlens/timeline.hpp"

namespace fs = std::filesystem;
using namespace affectlens;

namespace {

struct Globals {
  std::string lexicon_path;
  std::string index_dir;
  std::string format = "table";
  std::uint64_t density_window = 10'000;

  OutputFormat output() const { return parse_output_format(format); }
};

std::shared_ptr<const EmotionLexicon> load_lexicon(const Globals& g) {
  if (g.lexicon_path.empty()) {
    throw Error(ErrorCode::kUsage, "--lexicon (or AFFECTLENS_LEXICON) is required");
  }
  return std::make_shared<const EmotionLexicon>(load_word_lexicon_file(g.lexicon_path));
}

Index open_index(const Globals& g) {
  if (g.index_dir.empty()) {
    throw Error(ErrorCode::kUsage, "--index (or AFFECTLENS_INDEX) is required");
  }
  return Index::open(g.index_dir, load_lexicon(g));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedDocument {
  TokenStream tokens;
  EmotionProfile profile;
};

LoadedDocument load_document(const fs::path& path, const EmotionLexicon& lexicon) {
  LoadedDocument doc;
  doc.tokens = tokenize(strip_gutenberg_boilerplate(read_text_file(path)));
  std::string id = slugify(path.stem().string());
  doc.profile = analyze(doc.tokens, lexicon, id.empty() ? path.filename().string() : id);
  return doc;
}

std::vector<EmotionProfile> collection_profiles(const Index& index, const std::string& tag) {
  const auto m = index.manifest();
  const auto records = m->collection(tag);
  if (records.empty()) throw Error(ErrorCode::kNotFound, "unknown or empty collection '" + tag + "'");
  std::vector<EmotionProfile> out;
  for (const auto* r : records) out.push_back(*index.profile(r->doc_id));
  return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-driven emotion analysis for literary corpora"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--lexicon", g.lexicon_path, "NRC-format word-emotion lexicon (TSV)")
      ->envname("AFFECTLENS_LEXICON");
  app.add_option("--index", g.index_dir, "Index directory")->envname("AFFECTLENS_INDEX");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "tree"}))
      ->capture_default_str();
  app.add_option("--density-window", g.density_window,
                 "Densities are reported per this many tokens (new indexes and analyze)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Add text files or directories to the index");
  std::vector<std::string> ingest_paths;
  std::string ingest_collection;
  ingest->add_option("paths", ingest_paths, "Files or directories")->required();
  ingest->add_option("--collection", ingest_collection, "Collection tag, e.g. grimm")->required();

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "One-shot profile of text files (no index)");
  std::vector<std::string> analyze_paths;
  bool want_timeline = false;
  TimelineOptions tl_opts;
  std::string tl_categories = "joy,trust,fear";
  std::string tl_mode = "emotion";
  analyze_cmd->add_option("files", analyze_paths, "Text files")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_flag("--timeline", want_timeline, "Emit an emotion timeline instead of a profile");
  analyze_cmd->add_option("--window", tl_opts.window_tokens, "Timeline window (tokens)")
      ->capture_default_str();
  analyze_cmd->add_option("--stride", tl_opts.stride_tokens, "Timeline stride (tokens)")
      ->capture_default_str();
  analyze_cmd->add_option("--categories", tl_categories, "Timeline categories")->capture_default_str();
  analyze_cmd->add_option("--mode", tl_mode, "Timeline denominator: emotion|all")
      ->capture_default_str();

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Difference bars and salience clouds of A relative to B (doc ids with --index, else files)");
  std::string cmp_a, cmp_b, cmp_category;
  std::size_t cmp_k = kDefaultCloudSize;
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();
  compare->add_option("-k,--top", cmp_k, "Cloud size")->capture_default_str();
  compare->add_option("--category", cmp_category, "Only the salience cloud of this category");

  // rank
  auto* rank = app.add_subcommand("rank", "Documents of a collection by ascending density");
  std::string rank_collection, rank_category = "negative";
  rank->add_option("--collection", rank_collection)->required();
  rank->add_option("--category", rank_category)->capture_default_str();

  // stats
  auto* stats = app.add_subcommand(
      "stats", "Per-collection density mean/sd; with two collections also Welch and F tests");
  std::vector<std::string> stats_collections;
  stats->add_option("--collection", stats_collections)->required();

  // hist
  auto* hist = app.add_subcommand("hist", "Histogram of document densities");
  std::string hist_collection, hist_category = "negative";
  double hist_width = 100.0;
  hist->add_option("--collection", hist_collection)->required();
  hist->add_option("--category", hist_category)->capture_default_str();
  hist->add_option("--width", hist_width)->capture_default_str();

  // ngram-scan
  auto* scan = app.add_subcommand("ngram-scan", "Entity emotion timelines over 5-gram shards");
  std::string scan_targets, scan_manifest, scan_denominator = "all";
  std::vector<std::string> scan_shards_args;
  int scan_min_year = 1800, scan_bin = 5;
  unsigned scan_workers = std::max(1u, std::thread::hardware_concurrency());
  bool scan_store = false;
  scan->add_option("--targets", scan_targets, "Comma separated target words")->required();
  scan->add_option("--min-year", scan_min_year)->capture_default_str();
  scan->add_option("--bin", scan_bin, "Bin width in years")->capture_default_str();
  scan->add_option("--denominator", scan_denominator, "all|emotion")->capture_default_str();
  scan->add_option("--manifest", scan_manifest, "File listing shard paths");
  scan->add_option("--workers", scan_workers)->capture_default_str();
  scan->add_flag("--store", scan_store, "Store the timelines in --index for the HTTP service");
  scan->add_option("shards", scan_shards_args, "Shard files (plain or .gz)");

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP API over an index");
  ServiceConfig svc;
  serve->add_option("--host", svc.host)->capture_default_str();
  serve->add_option("--port", svc.port)->envname("AFFECTLENS_PORT")->capture_default_str();
  serve->add_flag("--allow-ingest", svc.allow_ingest, "Enable POST /ingest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ErrorCode::kUsage);
  }

  try {
    const DensityConfig density{g.density_window};

    if (*ingest) {
      if (g.index_dir.empty()) {
        throw Error(ErrorCode::kUsage, "--index (or AFFECTLENS_INDEX) is required");
      }
      Index index = Index::create(g.index_dir, load_lexicon(g), density);
      int status = 0;
      for (const auto& p : ingest_paths) {
        const auto report = index.ingest(p, ingest_collection);
        for (const auto& r : report.added) std::cout << "added\t" << r.doc_id << '\t' << r.token_count << '\n';
        for (const auto& r : report.unchanged) std::cout << "unchanged\t" << r.doc_id << '\n';
        for (const auto& f : report.failures) {
          std::cerr << "failed\t" << f.path << '\t' << error_code_name(f.code) << '\t' << f.message << '\n';
          if (status == 0) status = static_cast<int>(f.code);
        }
      }
      return status;
    }

    if (*analyze_cmd) {
      const auto lexicon = load_lexicon(g);
      tl_opts.categories = parse_category_list(tl_categories);
      tl_opts.mode = parse_timeline_mode(tl_mode);
      for (const auto& path : analyze_paths) {
        const auto doc = load_document(path, *lexicon);
        if (want_timeline) {
          std::cout << render_timeline(timeline(doc.tokens, *lexicon, tl_opts, doc.profile.doc_id),
                                       g.output());
        } else {
          std::cout << render_profile(doc.profile, density, g.output());
        }
      }
      return 0;
    }

    if (*compare) {
      std::shared_ptr<const EmotionProfile> a, b;
      if (!g.index_dir.empty()) {
        Index index = open_index(g);
        a = index.profile(cmp_a);
        b = index.profile(cmp_b);
      } else {
        const auto lexicon = load_lexicon(g);
        a = std::make_shared<const EmotionProfile>(load_document(cmp_a, *lexicon).profile);
        b = std::make_shared<const EmotionProfile>(load_document(cmp_b, *lexicon).profile);
      }
      if (!cmp_category.empty()) {
        const auto c = require_category(cmp_category);
        std::cout << render_cloud(salience_cloud(*a, *b, c, cmp_k), c, g.output());
      } else {
        std::cout << render_comparison(*a, *b, cmp_k, g.output());
      }
      return 0;
    }

    if (*rank) {
      Index index = open_index(g);
      const auto c = require_category(rank_category);
      const auto profiles = collection_profiles(index, rank_collection);
      std::cout << render_ranking(rank_by_density(profiles, c, index.manifest()->density), c,
                                  g.output());
      return 0;
    }

    if (*stats) {
      Index index = open_index(g);
      const auto cfg = index.manifest()->density;
      std::vector<std::vector<EmotionProfile>> corpora;
      std::vector<CorpusSummary> summaries;
      for (const auto& tag : stats_collections) {
        corpora.push_back(collection_profiles(index, tag));
        summaries.push_back(corpus_summary(corpora.back(), cfg, tag));
      }
      std::cout << render_summaries(summaries, g.output());
      if (corpora.size() == 2) {
        std::vector<CategoryTests> tests;
        for (auto c : kAllCategories) {
          const auto a = densities_of(corpora[0], c, cfg);
          const auto b = densities_of(corpora[1], c, cfg);
          CategoryTests t{c, mean_difference_test(a, b), std::nullopt};
          try {
            t.variance_ratio = variance_ratio_test(a, b);
          } catch (const Error& e) {
            std::cerr << "warning: " << to_string(c) << ": " << e.what() << '\n';
          }
          tests.push_back(t);
        }
        std::cout << '\n' << render_tests(stats_collections[0], stats_collections[1], tests, g.output());
      }
      return 0;
    }

    if (*hist) {
      Index index = open_index(g);
      const auto c = require_category(hist_category);
      const auto profiles = collection_profiles(index, hist_collection);
      std::cout << render_histogram(
          histogram(densities_of(profiles, c, index.manifest()->density), hist_width, c), g.output());
      return 0;
    }

    if (*scan) {
      const auto lexicon = load_lexicon(g);
      ScanOptions opts;
      opts.targets = split_csv(scan_targets);
      opts.min_year = scan_min_year;
      opts.bin_width = scan_bin;
      opts.denominator = parse_entity_denominator(scan_denominator);
      std::vector<fs::path> shards;
      if (!scan_manifest.empty()) shards = read_shard_manifest(scan_manifest);
      for (const auto& s : scan_shards_args) shards.emplace_back(s);
      if (shards.empty()) throw Error(ErrorCode::kUsage, "no shards given (positional or --manifest)");

      const EntityScanner result = scan_shards(*lexicon, opts, shards, scan_workers);
      const auto& st = result.stats();
      std::cerr << "scanned " << st.lines << " lines, " << st.matched_records << " matching, "
                << st.parse_errors << " parse errors\n";
      for (const auto& e : st.first_errors) {
        std::cerr << "  parse error at line " << e.line << ": " << e.message << '\n';
      }
      const auto timelines = result.timelines();
      if (scan_store) {
        Index index = open_index(g);
        for (const auto& tl : timelines) index.store_entity_timeline(tl);
      }
      std::cout << render_entity_timelines(timelines, g.output());
      return 0;
    }

    if (*serve) {
      Index index = open_index(g);
      Service service(index, svc);
      service.bind();
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      service.run();
      g_service = nullptr;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
