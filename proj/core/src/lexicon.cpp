#include "affectlens/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "affectlens/error.hpp"
#include "affectlens/unicode.hpp"
#include "digest.hpp"

namespace affectlens {

namespace {

bool has_whitespace(std::string_view word) {
  std::size_t pos = 0;
  while (pos < word.size()) {
    if (unicode::is_space(unicode::decode(word, pos))) return true;
  }
  return false;
}

// Alphabetical label order, which is the order the NRC distribution uses.
std::vector<AffectCategory> alphabetical_categories() {
  std::vector<AffectCategory> cats(kAllCategories.begin(), kAllCategories.end());
  std::sort(cats.begin(), cats.end(),
            [](AffectCategory a, AffectCategory b) { return to_string(a) < to_string(b); });
  return cats;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

EmotionLexicon::EmotionLexicon(const Map& entries) {
  entries_.reserve(entries.size());
  for (const auto& [word, cats] : entries) {
    if (word.empty()) throw Error(ErrorCode::kUsage, "lexicon word must not be empty");
    if (has_whitespace(word)) {
      throw Error(ErrorCode::kUsage, "lexicon word '" + word + "' contains whitespace");
    }
    entries_[unicode::fold_case(word)] |= cats;
  }
}

const CategorySet* EmotionLexicon::find_folded(std::string_view folded) const {
  auto it = entries_.find(folded);
  return it == entries_.end() ? nullptr : &it->second;
}

CategorySet EmotionLexicon::associations(std::string_view word) const {
  if (word.empty()) return {};
  const CategorySet* found = unicode::is_folded(word)
                                 ? find_folded(word)
                                 : find_folded(unicode::fold_case(word));
  return found ? *found : CategorySet{};
}

bool EmotionLexicon::contains(std::string_view word) const {
  if (word.empty()) return false;
  return unicode::is_folded(word) ? find_folded(word) != nullptr
                                  : find_folded(unicode::fold_case(word)) != nullptr;
}

std::vector<std::string> EmotionLexicon::sorted_words() const {
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (const auto& kv : entries_) words.push_back(kv.first);
  std::sort(words.begin(), words.end());
  return words;
}

std::string EmotionLexicon::fingerprint() const {
  std::ostringstream out;
  serialize_lexicon(*this, out);
  return detail::sha256_hex(out.str());
}

EmotionLexicon load_word_lexicon(std::istream& in) {
  EmotionLexicon::Map entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || line.find('\t', tab2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected 'word<TAB>category<TAB>0|1'");
    }
    const auto word = line.substr(0, tab1);
    const auto label = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto flag = line.substr(tab2 + 1);

    if (word.empty() || has_whitespace(word)) {
      throw ParseError(line_no, "word must be non-empty and free of whitespace");
    }
    const auto category = parse_category(label);
    if (!category) {
      throw ParseError(line_no, "unknown category label '" + std::string(label) + "'");
    }
    if (flag != "0" && flag != "1") {
      throw ParseError(line_no, "flag must be 0 or 1, got '" + std::string(flag) + "'");
    }
    auto& cats = entries[unicode::fold_case(word)];
    if (flag == "1") cats.insert(*category);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error while loading lexicon");
  return EmotionLexicon(entries);
}

EmotionLexicon load_word_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon file " + path.string());
  try {
    return load_word_lexicon(in);
  } catch (const ParseError& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void serialize_lexicon(const EmotionLexicon& lexicon, std::ostream& out) {
  static const auto order = alphabetical_categories();
  for (const auto& word : lexicon.sorted_words()) {
    const CategorySet cats = lexicon.associations(word);
    for (auto c : order) {
      out << word << '\t' << to_string(c) << '\t' << (cats.contains(c) ? '1' : '0') << '\n';
    }
  }
}

}  // namespace affectlens
