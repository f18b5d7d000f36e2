#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "affectlens/ngram.hpp"

using namespace affectlens;

namespace {

const EmotionLexicon& lexicon() {
  using C = AffectCategory;
  static const EmotionLexicon lex(EmotionLexicon::Map{
      {"terror", {C::kFear, C::kNegative}},
      {"war", {C::kFear, C::kNegative, C::kAnger}},
      {"peace", {C::kJoy, C::kTrust, C::kPositive}},
      {"hope", {C::kAnticipation, C::kJoy, C::kPositive}},
  });
  return lex;
}

std::vector<std::string> make_lines(std::size_t n, double target_rate) {
  static const std::vector<std::string> vocab = {"the", "of", "terror", "war", "peace",
                                                 "hope", "river", "said", "army_NOUN", "men"};
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::bernoulli_distribution target(target_rate);
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    for (int k = 0; k < 5; ++k) {
      if (k) line += ' ';
      line += (k == 2 && target(rng)) ? "germany" : vocab[word(rng)];
    }
    line += "\t" + std::to_string(1800 + i % 200) + "\t" + std::to_string(1 + i % 97) + "\t5";
    lines.push_back(std::move(line));
  }
  return lines;
}

void BM_ScanLines(benchmark::State& state) {
  const auto lines = make_lines(100'000, static_cast<double>(state.range(0)) / 100.0);
  std::size_t bytes = 0;
  for (const auto& l : lines) bytes += l.size() + 1;
  ScanOptions opts;
  opts.targets = {"germany", "france"};
  for (auto _ : state) {
    EntityScanner scanner(lexicon(), opts);
    for (const auto& l : lines) scanner.add_line(l);
    benchmark::DoNotOptimize(scanner.stats().matched_records);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes) * state.iterations());
}
BENCHMARK(BM_ScanLines)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ParseLine(benchmark::State& state) {
  const std::string line = "the brave_ADJ man stood firm\t1914\t27\t25";
  for (auto _ : state) benchmark::DoNotOptimize(parse_5gram_line(line));
}
BENCHMARK(BM_ParseLine);

}  // namespace
