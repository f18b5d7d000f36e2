#include <zlib.h>

#include <atomic>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>

#include "affectlens/error.hpp"
#include "affectlens/ngram.hpp"

namespace affectlens {

namespace {

constexpr std::size_t kChunkBytes = 4u << 20;

struct GzCloser {
  void operator()(gzFile_s* f) const noexcept { gzclose(f); }
};

// Calls `sink` for every non-empty line of a plain or gzip file. zlib reads
// uncompressed files transparently.
template <typename Sink>
void for_each_line(const std::filesystem::path& path, Sink&& sink) {
  std::unique_ptr<gzFile_s, GzCloser> file(gzopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorCode::kIo, "cannot open shard " + path.string());
  gzbuffer(file.get(), 1u << 20);

  std::string buffer(kChunkBytes, '\0');
  std::string carry;
  while (true) {
    const int got = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (got < 0) {
      int errnum = 0;
      const char* msg = gzerror(file.get(), &errnum);
      throw Error(ErrorCode::kIo, "read error in " + path.string() + ": " + msg);
    }
    if (got == 0) break;
    std::string_view chunk(buffer.data(), static_cast<std::size_t>(got));
    std::size_t pos = 0;
    if (!carry.empty()) {
      const auto nl = chunk.find('\n');
      if (nl == std::string_view::npos) {
        carry.append(chunk);
        continue;
      }
      carry.append(chunk.substr(0, nl));
      if (!carry.empty()) sink(std::string_view(carry));
      carry.clear();
      pos = nl + 1;
    }
    while (pos < chunk.size()) {
      const auto nl = chunk.find('\n', pos);
      if (nl == std::string_view::npos) {
        carry.assign(chunk.substr(pos));
        break;
      }
      if (nl > pos) sink(chunk.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  if (!carry.empty()) sink(std::string_view(carry));
}

}  // namespace

void EntityScanner::scan_file(const std::filesystem::path& path) {
  for_each_line(path, [this](std::string_view line) { add_line(line); });
}

EntityScanner scan_shards(const EmotionLexicon& lexicon, const ScanOptions& options,
                          const std::vector<std::filesystem::path>& shards, unsigned workers) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(shards.size())));
  EntityScanner result(lexicon, options);
  if (shards.empty()) return result;

  std::vector<EntityScanner> partial(workers, result);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < shards.size(); i = next++) {
        partial[w].scan_file(shards[i]);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& p : partial) result.merge(p);
  return result;
}

std::vector<std::filesystem::path> read_shard_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::kIo, "cannot open shard manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::vector<std::filesystem::path> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p(line.substr(first, last - first + 1));
    out.push_back(p.is_absolute() ? p : base / p);
  }
  return out;
}

}  // namespace affectlens
