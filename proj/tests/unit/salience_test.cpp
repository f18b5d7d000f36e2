#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "affectlens/error.hpp"
#include "affectlens/salience.hpp"
#include "oracles.hpp"

using namespace affectlens;

namespace {

using Tokens = std::vector<std::string>;

EmotionProfile profile_with(const std::string& word, std::size_t f, std::size_t n,
                            const EmotionLexicon& lex) {
  Tokens t(n, "filler");
  for (std::size_t i = 0; i < f; ++i) t[i] = word;
  return analyze(TokenStream{t}, lex);
}

const EmotionLexicon& lexicon() {
  static const EmotionLexicon lex(EmotionLexicon::Map{
      {"grief", {AffectCategory::kSadness}},
      {"tears", {AffectCategory::kSadness}},
      {"dirge", {AffectCategory::kSadness}},
      {"smile", {AffectCategory::kJoy}},
  });
  return lex;
}

}  // namespace

TEST(RelativeSalience, DirectEvaluation) {
  const auto p1 = profile_with("grief", 5, 1000, lexicon());
  const auto p2 = profile_with("grief", 1, 2000, lexicon());
  const auto e = relative_salience("grief", p1, p2);
  EXPECT_EQ(e.f1, 5u);
  EXPECT_EQ(e.n2, 2000u);
  EXPECT_NEAR(e.score, 0.0045, 1e-15);
  EXPECT_EQ(relative_salience("grief", p2, p1).score, -e.score);
  EXPECT_EQ(relative_salience("Grief", p1, p2).score, e.score);
  EXPECT_EQ(relative_salience("absent", p1, p2).score, 0.0);
}

TEST(RelativeSalience, EmptyProfileIsUndefined) {
  const auto p = profile_with("grief", 1, 10, lexicon());
  const auto empty = analyze(TokenStream{}, lexicon());
  EXPECT_THROW(relative_salience("grief", p, empty), Error);
}

TEST(SalienceCloud, IdenticalProfilesGiveEmptyCloud) {
  const auto p = profile_with("grief", 4, 100, lexicon());
  EXPECT_TRUE(salience_cloud(p, p, AffectCategory::kSadness).empty());
  EXPECT_THROW(salience_cloud(p, p, AffectCategory::kSadness, 0), Error);
}

TEST(SalienceCloud, OrdersByScoreThenWord) {
  const auto p1 = analyze(TokenStream{{"grief", "grief", "tears", "dirge", "smile", "x"}}, lexicon());
  const auto p2 = analyze(TokenStream{{"x", "x", "x", "dirge", "dirge", "x"}}, lexicon());
  const auto cloud = salience_cloud(p1, p2, AffectCategory::kSadness);
  ASSERT_EQ(cloud.size(), 2u);
  EXPECT_EQ(cloud[0].word, "grief");
  EXPECT_EQ(cloud[1].word, "tears");
  EXPECT_EQ(cloud[0].weight, 1.0);
  EXPECT_DOUBLE_EQ(cloud[1].weight, 0.5);
  EXPECT_EQ(salience_cloud(p1, p2, AffectCategory::kSadness, 1).size(), 1u);
}

TEST(SalienceProperties, RandomizedCases) {
  std::mt19937_64 rng(99);
  const auto synthetic = oracle::make_lexicon(rng, 100);
  std::istringstream in(synthetic.tsv);
  const auto lex = load_word_lexicon(in);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t1 = oracle::make_tokens(rng, synthetic, 300);
    const auto t2 = oracle::make_tokens(rng, synthetic, 300);
    const auto p1 = analyze(TokenStream{t1}, lex);
    const auto p2 = analyze(TokenStream{t2}, lex);
    Tokens d1 = t1, d2 = t2;
    d1.insert(d1.end(), t1.begin(), t1.end());
    d2.insert(d2.end(), t2.begin(), t2.end());
    const auto pd1 = analyze(TokenStream{d1}, lex);
    const auto pd2 = analyze(TokenStream{d2}, lex);

    for (const auto& [word, labels] : synthetic.words) {
      const double s = relative_salience(word, p1, p2).score;
      EXPECT_EQ(relative_salience(word, p2, p1).score, -s);
      EXPECT_EQ(relative_salience(word, pd1, pd2).score, s);
      const double want = static_cast<double>(oracle::count_of(t1, word)) / t1.size() -
                          static_cast<double>(oracle::count_of(t2, word)) / t2.size();
      EXPECT_TRUE(oracle::close(s, want, 1e-12));
    }

    for (const auto& label : oracle::category_labels()) {
      const auto c = *parse_category(label);
      const auto got = salience_cloud(p1, p2, c, 10);
      const auto want = oracle::cloud(t1, t2, synthetic, label, 10);
      ASSERT_EQ(got.size(), want.size()) << label;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].word, want[i].word);
        EXPECT_TRUE(oracle::close(got[i].score, want[i].score, 1e-12));
        EXPECT_GT(got[i].score, 0.0);
        EXPECT_TRUE(lex.associations(got[i].word).contains(c));
      }
    }
  }
}

TEST(SalienceProperties, AddingOccurrenceRaisesScore) {
  // Holding N1 fixed, replace a filler token with the word.
  for (std::size_t f = 0; f < 20; ++f) {
    const auto before = profile_with("grief", f, 50, lexicon());
    const auto after = profile_with("grief", f + 1, 50, lexicon());
    const auto other = profile_with("grief", 3, 70, lexicon());
    EXPECT_GT(relative_salience("grief", after, other).score,
              relative_salience("grief", before, other).score);
  }
}
