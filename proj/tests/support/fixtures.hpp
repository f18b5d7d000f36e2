#pragma once

// On-disk fixtures shared by the index, service, CLI and acceptance tests.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace fixture {

namespace fs = std::filesystem;

// A fresh, empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("affectlens_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Small fairy-tale flavoured lexicon in NRC layout.
inline std::string tale_lexicon_tsv() {
  const std::vector<std::pair<std::string, std::vector<std::string>>> words = {
      {"death", {"fear", "sadness", "negative"}},
      {"wicked", {"anger", "disgust", "fear", "negative"}},
      {"wolf", {"fear", "negative"}},
      {"happy", {"joy", "trust", "positive", "anticipation"}},
      {"gold", {"joy", "positive", "anticipation"}},
      {"friend", {"joy", "trust", "positive"}},
      {"cry", {"sadness", "negative"}},
      {"surprise", {"surprise", "joy", "fear"}},
      {"feast", {"joy", "positive"}},
      {"plain", {}},
  };
  std::string tsv;
  for (const auto& [word, labels] : words) {
    for (const auto& label : oracle::category_labels()) {
      const bool on = std::find(labels.begin(), labels.end(), label) != labels.end();
      tsv += word + '\t' + label + '\t' + (on ? "1" : "0") + '\n';
    }
  }
  return tsv;
}

// Writes `count` generated tales into dir and returns their paths. The first
// tale carries Gutenberg markers and a Title line.
inline std::vector<fs::path> write_tales(const fs::path& dir, int count, std::uint64_t seed) {
  static const std::vector<std::string> vocab = {
      "death", "wicked", "wolf", "happy", "gold", "friend", "cry", "surprise",
      "feast", "plain", "the", "king", "forest", "and", "went", "queen", "it's"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> length(1200, 2500);
  std::vector<fs::path> paths;
  for (int i = 0; i < count; ++i) {
    std::string body;
    const int n = length(rng);
    for (int k = 0; k < n; ++k) {
      body += vocab[pick(rng)];
      body += (k % 13 == 12) ? ".\n" : " ";
    }
    std::string text;
    if (i == 0) {
      text = "Title: The First Tale\n\n*** START OF THE PROJECT GUTENBERG EBOOK TALE ***\n" +
             body + "\n*** END OF THE PROJECT GUTENBERG EBOOK TALE ***\nLicense text\n";
    } else {
      text = body;
    }
    const fs::path path = dir / ("Tale " + std::to_string(i + 1) + ".txt");
    write_file(path, text);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace fixture
