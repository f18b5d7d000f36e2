#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "affectlens/error.hpp"
#include "affectlens/index.hpp"
#include "affectlens/queries.hpp"
#include "fixtures.hpp"

using namespace affectlens;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<const EmotionLexicon> tale_lexicon() {
  std::istringstream in(fixture::tale_lexicon_tsv());
  return std::make_shared<const EmotionLexicon>(load_word_lexicon(in));
}

class IndexTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fixture::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    texts_ = root_ / "texts";
    fixture::write_tales(texts_, 3, 42);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path root_;
  fs::path texts_;
};

}  // namespace

TEST(Slugify, Basic) {
  EXPECT_EQ(slugify("Tale 1"), "tale-1");
  EXPECT_EQ(slugify("  Godfather Death!! "), "godfather-death");
  EXPECT_EQ(slugify("Hänsel"), "h-nsel");
}

TEST_F(IndexTest, IngestDirectoryIsIdempotent) {
  auto index = Index::create(root_ / "idx", tale_lexicon());
  const auto first = index.ingest(texts_, "tales");
  EXPECT_EQ(first.added.size(), 3u);
  EXPECT_TRUE(first.failures.empty());
  const auto second = index.ingest(texts_, "tales");
  EXPECT_TRUE(second.added.empty());
  EXPECT_EQ(second.unchanged.size(), 3u);
  EXPECT_EQ(index.manifest()->documents.size(), 3u);
  const auto* rec = index.manifest()->find("tale-1");
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->title, "The First Tale");
  EXPECT_EQ(index.manifest()->find("tale-2")->title, "Tale 2");
}

TEST_F(IndexTest, EmptyAndNonUtf8FilesAreRejected) {
  fixture::write_file(texts_ / "empty.txt", "");
  fixture::write_file(texts_ / "digits.txt", "1234 5678");
  fixture::write_file(texts_ / "latin1.txt", std::string("caf\xe9 noir"));
  auto index = Index::create(root_ / "idx", tale_lexicon());
  const auto report = index.ingest(texts_, "tales");
  EXPECT_EQ(report.added.size(), 3u);
  ASSERT_EQ(report.failures.size(), 3u);
  for (const auto& f : report.failures) {
    if (f.path.find("latin1") != std::string::npos) {
      EXPECT_EQ(f.code, ErrorCode::kEncoding);
    } else {
      EXPECT_EQ(f.code, ErrorCode::kUndefined) << f.path;
    }
  }
}

TEST_F(IndexTest, ChangedFileIsReplaced) {
  auto index = Index::create(root_ / "idx", tale_lexicon());
  index.ingest(texts_, "tales");
  const auto old_profile = index.manifest()->find("tale-2")->profile_file;
  fixture::write_file(texts_ / "Tale 2.txt", "happy happy wolf");
  const auto report = index.ingest(texts_ / "Tale 2.txt", "tales");
  ASSERT_EQ(report.added.size(), 1u);
  EXPECT_EQ(report.added[0].doc_id, "tale-2");
  EXPECT_EQ(index.profile("tale-2")->total_tokens, 3u);
  EXPECT_FALSE(fs::exists(root_ / "idx" / old_profile));
  EXPECT_EQ(index.manifest()->documents.size(), 3u);
}

TEST_F(IndexTest, ReopenGivesIdenticalProfiles) {
  {
    auto index = Index::create(root_ / "idx", tale_lexicon());
    index.ingest(texts_, "tales");
  }
  auto index = Index::open(root_ / "idx", tale_lexicon());
  EXPECT_EQ(index.manifest()->documents.size(), 3u);
  const auto p = index.profile("tale-3");
  const auto again = analyze(index.tokens("tale-3"), index.lexicon(), "tale-3");
  EXPECT_EQ(*p, again);
  EXPECT_THROW(index.profile("missing"), Error);
}

TEST_F(IndexTest, RefusesDifferentLexicon) {
  { Index::create(root_ / "idx", tale_lexicon()).ingest(texts_, "tales"); }
  std::istringstream other("wolf\tjoy\t1\n");
  auto lex = std::make_shared<const EmotionLexicon>(load_word_lexicon(other));
  try {
    Index::open(root_ / "idx", lex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFingerprintMismatch);
  }
  try {
    Index::open(root_ / "nothing", lex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST_F(IndexTest, EntityTimelinesPersist) {
  auto index = Index::create(root_ / "idx", tale_lexicon());
  EntityScanner scanner(index.lexicon(), ScanOptions{{"germany"}, 1800, 5, EntityDenominator::kNonTargetTokens});
  scanner.add_line("wolf wolf germany happy plain\t1915\t3");
  index.store_entity_timeline(scanner.timelines()[0]);
  const auto reopened = Index::open(root_ / "idx", tale_lexicon());
  const auto tl = reopened.entity_timeline("germany");
  ASSERT_TRUE(tl);
  ASSERT_EQ(tl->bins.size(), 1u);
  EXPECT_EQ(tl->bins[0].percentage[AffectCategory::kFear], 50.0);
  EXPECT_FALSE(reopened.entity_timeline("france"));
}

TEST_F(IndexTest, QueryEngineEndpoints) {
  auto index = Index::create(root_ / "idx", tale_lexicon());
  index.ingest(texts_, "tales");
  QueryEngine q(index);
  using nlohmann::json;

  auto texts = q.get("/texts", {});
  ASSERT_EQ(texts.status, 200);
  EXPECT_EQ(json::parse(texts.body)["documents"].size(), 3u);

  auto missing = q.get("/texts/unknown-id/profile", {});
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(json::parse(missing.body)["error"]["code"], "not_found");

  auto cmp = q.get("/compare", {{"a", "tale-1"}, {"b", "tale-2"}, {"k", "5"}});
  ASSERT_EQ(cmp.status, 200) << cmp.body;
  const auto c = json::parse(cmp.body);
  EXPECT_EQ(c["diff_percentages"].size(), 8u);
  EXPECT_LE(c["clouds"]["fear"].size(), 5u);

  auto tl = q.get("/texts/tale-1/timeline", {{"window", "500"}, {"stride", "100"}, {"categories", "fear,joy"}});
  ASSERT_EQ(tl.status, 200) << tl.body;
  EXPECT_EQ(json::parse(tl.body)["series"].size(), 2u);
  EXPECT_EQ(q.get("/texts/tale-1/timeline", {{"window", "1000000"}}).status, 400);

  auto hist = q.get("/collections/tales/histogram", {{"category", "fear"}, {"width", "250"}});
  ASSERT_EQ(hist.status, 200);
  EXPECT_EQ(json::parse(hist.body)["total"], 3);

  auto rank = q.get("/collections/tales/ranking", {{"category", "joy"}});
  ASSERT_EQ(rank.status, 200);
  EXPECT_EQ(json::parse(rank.body)["documents"].size(), 3u);

  EXPECT_EQ(q.get("/collections/tales/summary", {}).status, 200);
  EXPECT_EQ(q.get("/collections/none/summary", {}).status, 404);
  EXPECT_EQ(q.get("/collections/tales/ranking", {{"category", "glee"}}).status, 400);
  EXPECT_EQ(q.get("/entities/germany/timeline", {}).status, 404);
  EXPECT_EQ(q.get("/nowhere", {}).status, 404);
}
