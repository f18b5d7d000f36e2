#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "affectlens/error.hpp"
#include "affectlens/lexicon.hpp"
#include "affectlens/textproc.hpp"
#include "oracles.hpp"

using namespace affectlens;

namespace {

using Tokens = std::vector<std::string>;

EmotionLexicon small_lexicon() {
  using C = AffectCategory;
  return EmotionLexicon(EmotionLexicon::Map{
      {"death", {C::kFear, C::kSadness, C::kNegative}},
      {"joyful", {C::kJoy, C::kPositive}},
      {"good", {C::kPositive}},
      {"ill", {C::kDisgust, C::kFear, C::kNegative, C::kSadness}},
  });
}

TokenStream stream(Tokens t) { return TokenStream{std::move(t)}; }

EmotionLexicon load(const std::string& tsv) {
  std::istringstream in(tsv);
  return load_word_lexicon(in);
}

}  // namespace

TEST(Tokenize, SplitsOnNonLetters) {
  EXPECT_EQ(tokenize("Death, ill — beware!").tokens, (Tokens{"death", "ill", "beware"}));
  EXPECT_EQ(tokenize("").total_count(), 0u);
  EXPECT_EQ(tokenize("don't stop").tokens, (Tokens{"don't", "stop"}));
}

TEST(Tokenize, ApostropheOnlyBetweenLetters) {
  EXPECT_EQ(tokenize("'tis the dogs' o’er").tokens, (Tokens{"tis", "the", "dogs", "o'er"}));
  EXPECT_EQ(tokenize("a''b").tokens, (Tokens{"a", "b"}));
}

TEST(Tokenize, DigitsAndUnicodeLetters) {
  EXPECT_EQ(tokenize("R2D2 in 1818").tokens, (Tokens{"r", "d", "in"}));
  EXPECT_EQ(tokenize("Élan CAFÉ").tokens, (Tokens{"élan", "café"}));
  // Invalid bytes behave as separators.
  EXPECT_EQ(tokenize(std::string("ab\xff" "cd")).tokens, (Tokens{"ab", "cd"}));
}

TEST(StripBoilerplate, NoMarkersIsIdentity) {
  const std::string text = "Once upon a time.\nThe end.\n";
  EXPECT_EQ(strip_gutenberg_boilerplate(text), text);
}

TEST(StripBoilerplate, KeepsInnerContent) {
  const std::string text =
      "header\n*** START OF THE PROJECT GUTENBERG EBOOK X ***\nbody one\nbody two\n"
      "*** END OF THE PROJECT GUTENBERG EBOOK X ***\nlicense\n";
  const auto out = strip_gutenberg_boilerplate(text);
  EXPECT_NE(out.find("body one"), std::string::npos);
  EXPECT_NE(out.find("body two"), std::string::npos);
  EXPECT_EQ(out.find("header"), std::string::npos);
  EXPECT_EQ(out.find("license"), std::string::npos);
  EXPECT_EQ(out.find("***"), std::string::npos);
}

TEST(StripBoilerplate, SingleMarkerKeepsContentSide) {
  const auto after = strip_gutenberg_boilerplate("header\n*** START OF X ***\nbody\n");
  EXPECT_EQ(tokenize(after).tokens, Tokens{"body"});
  const auto before = strip_gutenberg_boilerplate("body\n*** END OF X ***\nlicense\n");
  EXPECT_EQ(tokenize(before).tokens, Tokens{"body"});
}

TEST(Analyze, CountsCategoryOccurrences) {
  const auto p = analyze(stream({"death", "death", "joyful"}), small_lexicon(), "d");
  using C = AffectCategory;
  EXPECT_EQ(p.total_tokens, 3u);
  EXPECT_EQ(p.category_counts[C::kFear], 2u);
  EXPECT_EQ(p.category_counts[C::kSadness], 2u);
  EXPECT_EQ(p.category_counts[C::kNegative], 2u);
  EXPECT_EQ(p.category_counts[C::kJoy], 1u);
  EXPECT_EQ(p.category_counts[C::kPositive], 1u);
  EXPECT_EQ(p.category_counts[C::kAnger], 0u);
  EXPECT_EQ(p.emotion_token_count, 3u);
  EXPECT_EQ(p.polar_token_count, 3u);
  EXPECT_DOUBLE_EQ(emotion_percentage(p, C::kFear), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(polarity_percentage(p, C::kPositive), 1.0 / 3.0);
}

TEST(Analyze, EmptyStreamHasZeroCounts) {
  const auto p = analyze(stream({}), small_lexicon());
  EXPECT_EQ(p.total_tokens, 0u);
  for (auto c : kAllCategories) EXPECT_EQ(p.category_counts[c], 0u);
  EXPECT_EQ(emotion_percentage(p, AffectCategory::kJoy), 0.0);
  EXPECT_THROW(emotion_density(p, AffectCategory::kJoy), Error);
}

TEST(Analyze, PolarOnlyWordIsNotAnEmotionToken) {
  const auto p = analyze(stream({"good", "plain"}), small_lexicon());
  EXPECT_EQ(p.emotion_token_count, 0u);
  EXPECT_EQ(p.polar_token_count, 1u);
  for (auto e : kEmotions) EXPECT_EQ(emotion_percentage(p, e), 0.0);
}

TEST(Percentages, RejectWrongCategoryKind) {
  const auto p = analyze(stream({"death"}), small_lexicon());
  EXPECT_THROW(emotion_percentage(p, AffectCategory::kNegative), Error);
  EXPECT_THROW(polarity_percentage(p, AffectCategory::kFear), Error);
}

TEST(Density, PerWindowTokens) {
  Tokens t(600, "plain");
  t[0] = t[1] = t[2] = "death";
  const auto p = analyze(stream(t), small_lexicon());
  EXPECT_DOUBLE_EQ(emotion_density(p, AffectCategory::kFear, {10'000}), 50.0);
  EXPECT_EQ(emotion_density(p, AffectCategory::kJoy), 0.0);
  EXPECT_DOUBLE_EQ(emotion_density(p, AffectCategory::kNegative, {100}), 0.5);
  EXPECT_THROW(emotion_density(p, AffectCategory::kFear, {0}), Error);
}

TEST(DiffPercentages, IdentityAndSign) {
  const auto lex = small_lexicon();
  const auto a = analyze(stream({"joyful", "joyful", "death"}), lex);
  const auto b = analyze(stream({"death", "ill", "joyful"}), lex);
  for (double v : diff_percentages(a, a)) EXPECT_EQ(v, 0.0);
  const auto d = diff_percentages(a, b);
  EXPECT_GT(d[index_of(AffectCategory::kJoy)], 0.0);
  EXPECT_LT(d[index_of(AffectCategory::kFear)], 0.0);
  const auto empty = analyze(stream({"plain"}), lex);
  EXPECT_THROW(diff_percentages(a, empty), Error);
}

TEST(TextprocProperties, RandomDocuments) {
  std::mt19937_64 rng(2024);
  const auto synthetic = oracle::make_lexicon(rng, 100);
  const auto lex = load(synthetic.tsv);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t1 = oracle::make_tokens(rng, synthetic, 400);
    const auto t2 = oracle::make_tokens(rng, synthetic, 400);
    const auto p1 = analyze(tokenize(oracle::render(rng, t1)), lex);
    const auto p2 = analyze(tokenize(oracle::render(rng, t2)), lex);

    // Matches the one-token-at-a-time oracle.
    const auto o1 = oracle::analyze(t1, synthetic);
    ASSERT_EQ(p1.total_tokens, o1.total);
    for (auto c : kAllCategories) {
      EXPECT_EQ(p1.category_counts[c], o1.category_counts.at(std::string(to_string(c))));
    }
    EXPECT_EQ(p1.emotion_token_count, o1.emotion_tokens);
    EXPECT_EQ(p1.polar_token_count, o1.polar_tokens);

    // Per-word counts add up to the category counts.
    for (auto c : kAllCategories) {
      std::uint64_t sum = 0;
      for (const auto& [w, n] : p1.word_counts_per_category[c]) sum += n;
      EXPECT_EQ(sum, p1.category_counts[c]);
    }

    // Concatenation adds counts.
    Tokens joined = t1;
    joined.insert(joined.end(), t2.begin(), t2.end());
    const auto pj = analyze(stream(joined), lex);
    for (auto c : kAllCategories) {
      EXPECT_EQ(pj.category_counts[c], p1.category_counts[c] + p2.category_counts[c]);
    }

    // Doubling the text leaves densities unchanged.
    Tokens doubled = t1;
    doubled.insert(doubled.end(), t1.begin(), t1.end());
    const auto pd = analyze(stream(doubled), lex);
    for (auto c : kAllCategories) {
      EXPECT_EQ(emotion_density(pd, c), emotion_density(p1, c));
    }

    // Diff vector is bounded and antisymmetric.
    if (p1.emotion_token_count > 0 && p2.emotion_token_count > 0) {
      const auto d12 = diff_percentages(p1, p2);
      const auto d21 = diff_percentages(p2, p1);
      for (std::size_t i = 0; i < d12.size(); ++i) {
        EXPECT_GE(d12[i], -100.0);
        EXPECT_LE(d12[i], 100.0);
        EXPECT_EQ(d12[i], -d21[i]);
      }
    }
  }
}
