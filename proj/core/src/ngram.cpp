#include "affectlens/ngram.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

#include "affectlens/error.hpp"
#include "affectlens/unicode.hpp"

namespace affectlens {

namespace {

constexpr std::array<std::string_view, 12> kPosTags = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", ".", "X"};

std::string_view strip_pos_suffix(std::string_view token) noexcept {
  const auto us = token.rfind('_');
  if (us == std::string_view::npos || us == 0) return token;
  const auto tag = token.substr(us + 1);
  for (auto t : kPosTags) {
    if (tag == t) return token.substr(0, us);
  }
  return token;
}

// Lowercases into `out`, reusing its capacity.
void fold_into(std::string_view token, std::string& out) {
  out.clear();
  for (char ch : token) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      out = unicode::fold_case(token);
      return;
    }
    out.push_back((ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch);
  }
}

// True if `token` could fold to one of `targets`. Exact for ASCII tokens;
// any non-ASCII byte answers yes so the caller falls back to full folding.
bool may_match_target(std::string_view token, const std::vector<std::string>& targets) noexcept {
  for (char ch : token) {
    if (static_cast<unsigned char>(ch) >= 0x80) return true;
  }
  for (const auto& target : targets) {
    if (target.size() != token.size()) continue;
    bool equal = true;
    for (std::size_t i = 0; i < token.size() && equal; ++i) {
      const char ch = token[i];
      equal = ((ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch) == target[i];
    }
    if (equal) return true;
  }
  return false;
}

struct RawFields {
  std::array<std::string_view, kNgramOrder> tokens;
  int year = 0;
  std::uint64_t match_count = 0;
};

// Returns an error message, or an empty view on success.
std::string_view split_line(std::string_view line, RawFields& out) noexcept {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tab1 = line.find('\t');
  if (tab1 == std::string_view::npos) return "missing year and match_count fields";
  const auto tab2 = line.find('\t', tab1 + 1);
  if (tab2 == std::string_view::npos) return "missing match_count field";
  auto tab3 = line.find('\t', tab2 + 1);
  if (tab3 == std::string_view::npos) tab3 = line.size();

  std::string_view gram = line.substr(0, tab1);
  std::size_t count = 0;
  while (true) {
    const auto sp = gram.find(' ');
    const auto tok = gram.substr(0, sp);
    if (tok.empty()) return "empty token in 5-gram";
    if (count == kNgramOrder) return "expected exactly 5 tokens";
    out.tokens[count++] = tok;
    if (sp == std::string_view::npos) break;
    gram.remove_prefix(sp + 1);
  }
  if (count != kNgramOrder) return "expected exactly 5 tokens";

  const auto year = line.substr(tab1 + 1, tab2 - tab1 - 1);
  const auto match = line.substr(tab2 + 1, tab3 - tab2 - 1);
  auto [yp, yec] = std::from_chars(year.data(), year.data() + year.size(), out.year);
  if (yec != std::errc{} || yp != year.data() + year.size() || year.empty()) {
    return "year is not an integer";
  }
  if (out.year < 0 || out.year > 2100) return "year outside [0, 2100]";
  auto [mp, mec] = std::from_chars(match.data(), match.data() + match.size(), out.match_count);
  if (mec != std::errc{} || mp != match.data() + match.size() || match.empty()) {
    return "match_count is not a non-negative integer";
  }
  if (out.match_count == 0) return "match_count must be at least 1";
  return {};
}

}  // namespace

std::string normalize_ngram_token(std::string_view token) {
  std::string out;
  fold_into(strip_pos_suffix(token), out);
  return out;
}

NgramRecord parse_5gram_line(std::string_view line) {
  RawFields raw;
  if (auto err = split_line(line, raw); !err.empty()) {
    throw Error(ErrorCode::kParse, std::string(err));
  }
  NgramRecord rec;
  for (std::size_t i = 0; i < kNgramOrder; ++i) rec.tokens[i] = normalize_ngram_token(raw.tokens[i]);
  rec.year = raw.year;
  rec.match_count = raw.match_count;
  return rec;
}

std::string_view to_string(EntityDenominator d) noexcept {
  return d == EntityDenominator::kNonTargetTokens ? "all" : "emotion";
}

EntityDenominator parse_entity_denominator(std::string_view text) {
  if (text == "all" || text == "non-target") return EntityDenominator::kNonTargetTokens;
  if (text == "emotion") return EntityDenominator::kEmotionTokens;
  throw Error(ErrorCode::kUsage,
              "unknown denominator '" + std::string(text) + "' (expected all|emotion)");
}

void ScanStats::merge(const ScanStats& other) {
  lines += other.lines;
  bytes += other.bytes;
  parse_errors += other.parse_errors;
  matched_records += other.matched_records;
  for (const auto& e : other.first_errors) {
    if (first_errors.size() >= kMaxRecordedErrors) break;
    first_errors.push_back(e);
  }
}

EntityScanner::EntityScanner(const EmotionLexicon& lexicon, ScanOptions options)
    : lexicon_(&lexicon), options_(std::move(options)) {
  if (options_.bin_width < 1) throw Error(ErrorCode::kUsage, "bin width must be at least 1");
  if (options_.targets.empty()) throw Error(ErrorCode::kUsage, "at least one target is required");
  std::vector<std::string> folded;
  for (const auto& t : options_.targets) {
    auto f = unicode::fold_case(t);
    if (f.empty() || f.find_first_of(" \t\r\n") != std::string::npos) {
      throw Error(ErrorCode::kUsage, "target must be a single token, got '" + t + "'");
    }
    if (std::find(folded.begin(), folded.end(), f) == folded.end()) folded.push_back(std::move(f));
  }
  options_.targets = std::move(folded);
  bins_.resize(options_.targets.size());
}

int EntityScanner::bin_start(int year) const noexcept {
  const int offset = year - options_.min_year;
  return options_.min_year + (offset / options_.bin_width) * options_.bin_width;
}

void EntityScanner::accumulate(const std::array<std::string_view, kNgramOrder>& folded, int year,
                               std::uint64_t match_count) {
  if (year < options_.min_year) return;
  bool any = false;
  for (std::size_t t = 0; t < options_.targets.size(); ++t) {
    const std::string_view target = options_.targets[t];
    if (std::find(folded.begin(), folded.end(), target) == folded.end()) continue;
    any = true;
    Accumulator& acc = bins_[t][bin_start(year)];
    ++acc.records;
    for (const auto& tok : folded) {
      if (tok == target) continue;
      acc.non_target += match_count;
      const CategorySet cats = lexicon_->associations(tok);
      if (cats.empty()) continue;
      for (auto c : kAllCategories) {
        if (cats.contains(c)) acc.weight[c] += match_count;
      }
      if (cats.has_emotion()) acc.emotion += match_count;
      if (cats.has_polarity()) acc.polar += match_count;
    }
  }
  if (any) ++stats_.matched_records;
}

void EntityScanner::add(const NgramRecord& record) {
  std::array<std::string_view, kNgramOrder> folded;
  for (std::size_t i = 0; i < kNgramOrder; ++i) {
    fold_into(record.tokens[i], scratch_[i]);
    folded[i] = scratch_[i];
  }
  accumulate(folded, record.year, record.match_count);
}

void EntityScanner::add_line(std::string_view line) {
  ++stats_.lines;
  stats_.bytes += line.size() + 1;
  RawFields raw;
  if (auto err = split_line(line, raw); !err.empty()) {
    ++stats_.parse_errors;
    if (stats_.first_errors.size() < ScanStats::kMaxRecordedErrors) {
      stats_.first_errors.push_back({stats_.lines, std::string(err)});
    }
    return;
  }
  if (raw.year < options_.min_year) return;
  // Most lines mention no target: reject them before copying any token.
  for (auto& tok : raw.tokens) tok = strip_pos_suffix(tok);
  if (std::none_of(raw.tokens.begin(), raw.tokens.end(), [this](std::string_view tok) {
        return may_match_target(tok, options_.targets);
      })) {
    return;
  }
  std::array<std::string_view, kNgramOrder> folded;
  for (std::size_t i = 0; i < kNgramOrder; ++i) {
    fold_into(raw.tokens[i], scratch_[i]);
    folded[i] = scratch_[i];
  }
  accumulate(folded, raw.year, raw.match_count);
}

void EntityScanner::scan(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    add_line(line);
  }
}

void EntityScanner::merge(const EntityScanner& other) {
  if (other.options_.targets != options_.targets || other.options_.min_year != options_.min_year ||
      other.options_.bin_width != options_.bin_width) {
    throw Error(ErrorCode::kUsage, "cannot merge scanners with different options");
  }
  for (std::size_t t = 0; t < bins_.size(); ++t) {
    for (const auto& [start, src] : other.bins_[t]) {
      Accumulator& dst = bins_[t][start];
      for (auto c : kAllCategories) dst.weight[c] += src.weight[c];
      dst.non_target += src.non_target;
      dst.emotion += src.emotion;
      dst.polar += src.polar;
      dst.records += src.records;
    }
  }
  stats_.merge(other.stats_);
}

std::vector<EntityTimeline> EntityScanner::timelines() const {
  std::vector<EntityTimeline> out;
  for (std::size_t t = 0; t < bins_.size(); ++t) {
    EntityTimeline tl;
    tl.target = options_.targets[t];
    tl.denominator = options_.denominator;
    tl.bin_width = options_.bin_width;
    const auto& bins = bins_[t];
    if (!bins.empty()) {
      const int first = bins.begin()->first;
      const int last = bins.rbegin()->first;
      for (int start = first; start <= last; start += options_.bin_width) {
        EntityBin bin;
        bin.bin_start = start;
        if (auto it = bins.find(start); it != bins.end()) {
          const Accumulator& acc = it->second;
          bin.weight = acc.weight;
          bin.non_target_weight = acc.non_target;
          bin.emotion_weight = acc.emotion;
          bin.polar_weight = acc.polar;
          bin.records = acc.records;
        }
        const bool by_emotion = options_.denominator == EntityDenominator::kEmotionTokens;
        bin.support_weight = by_emotion ? bin.emotion_weight : bin.non_target_weight;
        bin.zero_support = bin.support_weight == 0;
        for (auto c : kAllCategories) {
          std::uint64_t denom = bin.non_target_weight;
          if (by_emotion) denom = is_emotion(c) ? bin.emotion_weight : bin.polar_weight;
          bin.percentage[c] = denom == 0 ? 0.0
                                         : 100.0 * static_cast<double>(bin.weight[c]) /
                                               static_cast<double>(denom);
        }
        tl.bins.push_back(bin);
      }
    }
    out.push_back(std::move(tl));
  }
  return out;
}

}  // namespace affectlens
