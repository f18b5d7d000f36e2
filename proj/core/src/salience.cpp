#include "affectlens/salience.hpp"

#include <algorithm>

#include "affectlens/error.hpp"
#include "affectlens/unicode.hpp"

namespace affectlens {

namespace {

std::uint64_t frequency(const EmotionProfile& p, std::string_view folded) {
  auto it = p.term_counts.find(std::string(folded));
  return it == p.term_counts.end() ? 0 : it->second;
}

void require_tokens(const EmotionProfile& p) {
  if (p.total_tokens == 0) {
    throw Error(ErrorCode::kUndefined,
                "relative salience undefined: document '" + p.doc_id + "' has no tokens");
  }
}

SalienceEntry make_entry(std::string word, std::uint64_t f1, std::uint64_t f2,
                         const EmotionProfile& p1, const EmotionProfile& p2) {
  SalienceEntry e;
  e.word = std::move(word);
  e.f1 = f1;
  e.f2 = f2;
  e.n1 = p1.total_tokens;
  e.n2 = p2.total_tokens;
  e.score = static_cast<double>(f1) / static_cast<double>(e.n1) -
            static_cast<double>(f2) / static_cast<double>(e.n2);
  return e;
}

}  // namespace

SalienceEntry relative_salience(std::string_view word, const EmotionProfile& p1,
                                const EmotionProfile& p2) {
  require_tokens(p1);
  require_tokens(p2);
  std::string folded = unicode::fold_case(word);
  const auto f1 = frequency(p1, folded);
  const auto f2 = frequency(p2, folded);
  return make_entry(std::move(folded), f1, f2, p1, p2);
}

std::vector<SalienceEntry> salience_cloud(const EmotionProfile& p1, const EmotionProfile& p2,
                                          AffectCategory category, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kUsage, "salience cloud size k must be at least 1");
  require_tokens(p1);
  require_tokens(p2);

  // A positive score needs f1 > 0, so p1's words of this category are the
  // only candidates.
  std::vector<SalienceEntry> candidates;
  for (const auto& [word, f1] : p1.word_counts_per_category[category]) {
    auto entry = make_entry(word, f1, frequency(p2, word), p1, p2);
    if (entry.score > 0.0) candidates.push_back(std::move(entry));
  }

  auto by_rank = [](const SalienceEntry& a, const SalienceEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  };
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), by_rank);
  candidates.resize(keep);

  if (!candidates.empty()) {
    const double top = candidates.front().score;
    for (auto& e : candidates) e.weight = e.score / top;
  }
  return candidates;
}

}  // namespace affectlens
