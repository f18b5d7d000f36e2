#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "affectlens/category.hpp"
#include "affectlens/lexicon.hpp"

namespace affectlens {

// One annotator's answers for one sense of a word.
struct SenseAnnotation {
  std::string word;
  std::string sense_id;
  std::string annotator_id;
  PerCategory<bool> votes;
  bool q1_correct = true;
};

// Majority-vote result for one (word, sense) pair.
struct SenseEntry {
  std::string word;
  std::string sense_id;
  CategorySet categories;
  int annotator_count = 0;

  friend bool operator==(const SenseEntry&, const SenseEntry&) = default;
};

// Drops annotations whose word-choice check failed, then keeps category c for
// a (word, sense) group iff strictly more than half of the surviving
// annotators voted for it. A tie is "not associated". Groups with no
// survivors produce no entry. Output is sorted by (word, sense_id).
std::vector<SenseEntry> aggregate_votes(const std::vector<SenseAnnotation>& annotations);

// Word-level lexicon: the union of the categories of every sense of a word.
EmotionLexicon union_senses(const std::vector<SenseEntry>& entries);

// Inter-annotator agreement over (word, sense, category) instances, counted
// on annotations that passed the word-choice check.
struct AgreementStats {
  std::size_t instances = 0;
  std::size_t unanimous = 0;    // every annotator gave the same answer
  std::size_t one_dissent = 0;  // exactly one annotator disagreed

  double unanimous_fraction() const noexcept {
    return instances == 0 ? 0.0 : static_cast<double>(unanimous) / static_cast<double>(instances);
  }
  double one_dissent_fraction() const noexcept {
    return instances == 0 ? 0.0 : static_cast<double>(one_dissent) / static_cast<double>(instances);
  }
};

AgreementStats agreement_stats(const std::vector<SenseAnnotation>& annotations);

// Raw annotation TSV:
//   word<TAB>sense_id<TAB>annotator_id<TAB>q1_correct<TAB>category<TAB>0|1
// q1_correct accepts 0/1/true/false. Every (word, sense, annotator) must
// answer all ten categories, otherwise a ParseError is thrown.
std::vector<SenseAnnotation> load_annotations(std::istream& in);

}  // namespace affectlens
