#include "affectlens/annotations.hpp"

#include <istream>
#include <map>
#include <optional>
#include <tuple>

#include "affectlens/error.hpp"
#include "affectlens/unicode.hpp"

namespace affectlens {

namespace {

using SenseKey = std::pair<std::string, std::string>;

std::map<SenseKey, std::vector<const SenseAnnotation*>> surviving_groups(
    const std::vector<SenseAnnotation>& annotations) {
  std::map<SenseKey, std::vector<const SenseAnnotation*>> groups;
  for (const auto& a : annotations) {
    if (!a.q1_correct) continue;
    groups[{unicode::fold_case(a.word), a.sense_id}].push_back(&a);
  }
  return groups;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return fields;
}

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
  if (s == "0" || s == "false" || s == "FALSE" || s == "False") return false;
  return std::nullopt;
}

}  // namespace

std::vector<SenseEntry> aggregate_votes(const std::vector<SenseAnnotation>& annotations) {
  std::vector<SenseEntry> out;
  for (const auto& [key, group] : surviving_groups(annotations)) {
    SenseEntry entry;
    entry.word = key.first;
    entry.sense_id = key.second;
    entry.annotator_count = static_cast<int>(group.size());
    for (auto c : kAllCategories) {
      std::size_t yes = 0;
      for (const auto* a : group) yes += a->votes[c] ? 1 : 0;
      if (2 * yes > group.size()) entry.categories.insert(c);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

EmotionLexicon union_senses(const std::vector<SenseEntry>& entries) {
  EmotionLexicon::Map words;
  for (const auto& e : entries) words[e.word] |= e.categories;
  return EmotionLexicon(words);
}

AgreementStats agreement_stats(const std::vector<SenseAnnotation>& annotations) {
  AgreementStats stats;
  for (const auto& [key, group] : surviving_groups(annotations)) {
    for (auto c : kAllCategories) {
      std::size_t yes = 0;
      for (const auto* a : group) yes += a->votes[c] ? 1 : 0;
      const std::size_t no = group.size() - yes;
      ++stats.instances;
      if (yes == 0 || no == 0) {
        ++stats.unanimous;
      } else if (group.size() >= 3 && (yes == 1 || no == 1)) {
        ++stats.one_dissent;
      }
    }
  }
  return stats;
}

std::vector<SenseAnnotation> load_annotations(std::istream& in) {
  struct Partial {
    SenseAnnotation annotation;
    CategorySet answered;
    std::size_t first_line = 0;
  };
  std::map<std::tuple<std::string, std::string, std::string>, Partial> partials;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const auto f = split_tabs(line);
    if (f.size() != 6) {
      throw ParseError(line_no, "expected 6 tab-separated fields, got " + std::to_string(f.size()));
    }
    if (f[0].empty()) throw ParseError(line_no, "empty word");
    const auto q1 = parse_bool(f[3]);
    if (!q1) throw ParseError(line_no, "q1_correct must be 0/1/true/false");
    const auto category = parse_category(f[4]);
    if (!category) throw ParseError(line_no, "unknown category label '" + std::string(f[4]) + "'");
    const auto vote = parse_bool(f[5]);
    if (!vote) throw ParseError(line_no, "vote must be 0 or 1");

    auto key = std::make_tuple(unicode::fold_case(f[0]), std::string(f[1]), std::string(f[2]));
    auto [it, fresh] = partials.try_emplace(key);
    Partial& p = it->second;
    if (fresh) {
      p.annotation.word = std::get<0>(key);
      p.annotation.sense_id = std::get<1>(key);
      p.annotation.annotator_id = std::get<2>(key);
      p.annotation.q1_correct = *q1;
      p.first_line = line_no;
    } else if (p.annotation.q1_correct != *q1) {
      throw ParseError(line_no, "inconsistent q1_correct for the same annotator and sense");
    }
    if (p.answered.contains(*category)) {
      throw ParseError(line_no, "duplicate answer for category " + std::string(to_string(*category)));
    }
    p.answered.insert(*category);
    p.annotation.votes[*category] = *vote;
  }

  std::vector<SenseAnnotation> out;
  out.reserve(partials.size());
  for (auto& [key, p] : partials) {
    if (p.answered.size() != kCategoryCount) {
      throw ParseError(p.first_line, "annotation of '" + p.annotation.word + "' by " +
                                         p.annotation.annotator_id +
                                         " does not cover all ten categories");
    }
    out.push_back(std::move(p.annotation));
  }
  return out;
}

}  // namespace affectlens
