#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "affectlens/category.hpp"

namespace affectlens {

// Immutable word -> affect category map. Keys are case-folded, non-empty and
// whitespace free. A key may map to the empty set: the word is known to the
// lexicon but carries no association.
class EmotionLexicon {
 public:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using Map = std::unordered_map<std::string, CategorySet, StringHash, std::equal_to<>>;

  EmotionLexicon() = default;

  // Validates and case-folds every key; keys that fold to the same string
  // are merged by union. Throws Error(kUsage) for empty keys or keys holding
  // whitespace.
  explicit EmotionLexicon(const Map& entries);

  // Case-insensitive. Unknown words yield the empty set.
  CategorySet associations(std::string_view word) const;

  bool contains(std::string_view word) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const Map& entries() const noexcept { return entries_; }

  std::vector<std::string> sorted_words() const;

  // Hex SHA-256 of the canonical serialization. Two lexicons with equal
  // entries share a fingerprint.
  std::string fingerprint() const;

  friend bool operator==(const EmotionLexicon& a, const EmotionLexicon& b) {
    return a.entries_ == b.entries_;
  }

 private:
  const CategorySet* find_folded(std::string_view folded) const;

  Map entries_;
};

// Reads the NRC distribution layout: one `word<TAB>category<TAB>0|1` per line.
// Blank lines are skipped. A word whose flags are all zero stays in the
// lexicon with an empty set. Throws ParseError with the line number on a
// malformed line or an unknown category label.
EmotionLexicon load_word_lexicon(std::istream& in);
EmotionLexicon load_word_lexicon_file(const std::filesystem::path& path);

// Canonical form: every word emits ten lines, words sorted bytewise and the
// category labels sorted alphabetically within a word (the NRC file order).
void serialize_lexicon(const EmotionLexicon& lexicon, std::ostream& out);

}  // namespace affectlens
