#include "affectlens/textproc.hpp"

#include <spdlog/spdlog.h>

#include <unordered_map>

#include "affectlens/error.hpp"
#include "affectlens/unicode.hpp"

namespace affectlens {

namespace {

struct Line {
  std::size_t begin;  // offset of first byte
  std::size_t end;    // offset one past the newline (or text end)
  std::string_view content;
};

bool starts_with_marker(std::string_view line, std::string_view word) {
  // Accepts "*** START OF", "***START OF" and the older "*** START OF THIS".
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (line.substr(i, 3) != "***") return false;
  i += 3;
  while (i < line.size() && line[i] == ' ') ++i;
  const std::string_view rest = line.substr(i);
  if (rest.size() < word.size() + 3) return false;
  for (std::size_t k = 0; k < word.size(); ++k) {
    char ch = rest[k];
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
    if (ch != word[k]) return false;
  }
  std::string_view tail = rest.substr(word.size());
  while (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
  return tail.substr(0, 2) == "OF" || tail.substr(0, 2) == "of";
}

}  // namespace

std::string strip_gutenberg_boilerplate(std::string_view text) {
  std::optional<Line> start;
  std::optional<Line> end;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const std::size_t stop = nl == std::string_view::npos ? text.size() : nl + 1;
    const Line line{pos, stop, text.substr(pos, stop - pos)};
    if (!start && !end && starts_with_marker(line.content, "START")) {
      start = line;
    } else if (!end && starts_with_marker(line.content, "END")) {
      end = line;
      break;
    }
    pos = stop;
  }

  if (!start && !end) return std::string(text);
  if (start && !end) {
    spdlog::warn("Gutenberg START marker without END marker; keeping text after START");
    return std::string(text.substr(start->end));
  }
  if (!start && end) {
    spdlog::warn("Gutenberg END marker without START marker; keeping text before END");
    return std::string(text.substr(0, end->begin));
  }
  return std::string(text.substr(start->end, end->begin - start->end));
}

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = unicode::decode(text, pos);
    if (unicode::is_letter(cp)) {
      unicode::append_utf8(current, unicode::to_lower(cp));
      continue;
    }
    if (unicode::is_apostrophe(cp) && !current.empty() && pos < text.size()) {
      std::size_t peek = pos;
      if (unicode::is_letter(unicode::decode(text, peek))) {
        current.push_back('\'');
        continue;
      }
    }
    if (!current.empty()) {
      out.tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  return out;
}

EmotionProfile analyze(const TokenStream& tokens, const EmotionLexicon& lexicon,
                       std::string doc_id) {
  EmotionProfile profile;
  profile.doc_id = std::move(doc_id);
  profile.total_tokens = tokens.total_count();

  std::unordered_map<std::string_view, std::uint64_t> freq;
  freq.reserve(tokens.tokens.size() / 4 + 16);
  for (const auto& t : tokens.tokens) ++freq[t];

  for (const auto& [word, n] : freq) {
    profile.term_counts.emplace(std::string(word), n);
    const CategorySet cats = lexicon.associations(word);
    if (cats.empty()) continue;
    for (auto c : kAllCategories) {
      if (!cats.contains(c)) continue;
      profile.category_counts[c] += n;
      profile.word_counts_per_category[c].emplace(std::string(word), n);
    }
    if (cats.has_emotion()) profile.emotion_token_count += n;
    if (cats.has_polarity()) profile.polar_token_count += n;
  }
  return profile;
}

double emotion_percentage(const EmotionProfile& profile, AffectCategory c) {
  if (!is_emotion(c)) {
    throw Error(ErrorCode::kUsage, "emotion_percentage: '" + std::string(to_string(c)) +
                                       "' is a polarity, not an emotion");
  }
  if (profile.emotion_token_count == 0) return 0.0;
  return static_cast<double>(profile.category_counts[c]) /
         static_cast<double>(profile.emotion_token_count);
}

double polarity_percentage(const EmotionProfile& profile, AffectCategory c) {
  if (!is_polarity(c)) {
    throw Error(ErrorCode::kUsage, "polarity_percentage: '" + std::string(to_string(c)) +
                                       "' is an emotion, not a polarity");
  }
  if (profile.polar_token_count == 0) return 0.0;
  return static_cast<double>(profile.category_counts[c]) /
         static_cast<double>(profile.polar_token_count);
}

double emotion_density(const EmotionProfile& profile, AffectCategory c, const DensityConfig& cfg) {
  if (cfg.window == 0) throw Error(ErrorCode::kUsage, "density window must be at least 1");
  if (profile.total_tokens == 0) {
    throw Error(ErrorCode::kUndefined,
                "density undefined for empty document '" + profile.doc_id + "'");
  }
  // count * window is an exact integer in double range, so a single rounding.
  return static_cast<double>(profile.category_counts[c]) * static_cast<double>(cfg.window) /
         static_cast<double>(profile.total_tokens);
}

EmotionVector diff_percentages(const EmotionProfile& p1, const EmotionProfile& p2) {
  for (const auto* p : {&p1, &p2}) {
    if (p->emotion_token_count == 0) {
      throw Error(ErrorCode::kUndefined,
                  "document '" + p->doc_id + "' has no emotion words; percentages undefined");
    }
  }
  EmotionVector out{};
  for (auto e : kEmotions) {
    out[index_of(e)] = 100.0 * (emotion_percentage(p1, e) - emotion_percentage(p2, e));
  }
  return out;
}

}  // namespace affectlens
