#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "coword/corpus.hpp"
#include "coword/error.hpp"
#include "../support/temp_dir.hpp"

using namespace coword;

namespace {

Corpus from_csv(const std::string& body) {
  std::istringstream in(body);
  return ingest_csv(in, "test.csv");
}

Corpus from_jsonl(const std::string& body) {
  std::istringstream in(body);
  return ingest_jsonl(in, "test.jsonl");
}

}  // namespace

TEST_CASE("csv ingestion sorts by (year, id)") {
  Corpus c = from_csv("id,title,abstract,year\n"
                      "b2,Second title,Some abstract,1999\n"
                      "a1,First title,,1998\n");
  REQUIRE(c.size() == 2);
  CHECK(c.at(0).id == "a1");
  CHECK(c.at(0).year == 1998);
  CHECK(c.at(0).abstract == "");
  CHECK(c.at(1).id == "b2");
  CHECK(c.find("b2") == 1);
  CHECK(c.find("nope") == -1);
}

TEST_CASE("duplicate ids are rejected by name") {
  try {
    from_csv("id,title,abstract,year\na1,T one,,1998\na1,T two,,1999\n");
    FAIL("expected DUPLICATE_ID");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateId);
    CHECK(std::string(e.what()).find("a1") != std::string::npos);
  }
}

TEST_CASE("year bounds produce BAD_YEAR naming the line") {
  try {
    from_jsonl(R"({"id":"x1","title":"ok","year":1998})" "\n"
               R"({"id":"x2","title":"too old","year":1745})" "\n");
    FAIL("expected BAD_YEAR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadYear);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  CHECK_THROWS_AS(from_csv("id,title,year\nx,T,2101\n"), Error);
  CHECK_NOTHROW(from_csv("id,title,year\nx,T,1800\n"));
  CHECK_NOTHROW(from_csv("id,title,year\nx,T,2100\n"));
}

TEST_CASE("missing fields") {
  CHECK_THROWS_WITH_AS(from_csv("id,title,year\n,T,1998\n"), doctest::Contains("missing id"),
                       Error);
  CHECK_THROWS_WITH_AS(from_csv("id,title,year\nx, ,1998\n"), doctest::Contains("title"), Error);
  CHECK_THROWS_WITH_AS(from_jsonl(R"({"id":"x","title":"T"})" "\n"),
                       doctest::Contains("missing year"), Error);
  CHECK_THROWS_WITH_AS(from_jsonl(R"({"title":"T","year":1998})" "\n"),
                       doctest::Contains("missing id"), Error);
}

TEST_CASE("malformed rows") {
  // wrong field count
  CHECK_THROWS_AS(from_csv("id,title,year\na,B\n"), Error);
  // invalid JSON
  CHECK_THROWS_AS(from_jsonl("{not json\n"), Error);
  // JSON line that is not an object
  CHECK_THROWS_AS(from_jsonl("[1,2]\n"), Error);
  // invalid UTF-8 in a field
  CHECK_THROWS_AS(from_csv("id,title,year\na,bad\xff\xfetitle,1998\n"), Error);
  // header is required
  CHECK_THROWS_AS(from_csv(""), Error);
  try {
    from_csv("id,title,year\na,B\n");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedRow);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("headers are case-insensitive and extras land in meta") {
  Corpus c = from_csv("ID,Title,YEAR,Journal,notes\n"
                      "r1,\"Hello, world\",2001,MCS,\"quoted \"\"stuff\"\"\"\n");
  REQUIRE(c.size() == 1);
  const BibRecord& r = c.at(0);
  CHECK(r.title == "Hello, world");
  CHECK(r.year == 2001);
  REQUIRE(r.meta.size() == 2);
  CHECK(r.meta.at("Journal") == "MCS");
  CHECK(r.meta.at("notes") == "quoted \"stuff\"");
}

TEST_CASE("jsonl extra keys land in meta, non-strings stringified") {
  Corpus c = from_jsonl(R"({"id":"r1","title":"T","year":2001,"volume":12,"open":true})" "\n");
  REQUIRE(c.size() == 1);
  CHECK(c.at(0).meta.at("volume") == "12");
  CHECK(c.at(0).meta.at("open") == "true");
}

TEST_CASE("ingestion is order-insensitive") {
  std::vector<std::string> rows = {
      R"({"id":"a","title":"T a","year":1999})",
      R"({"id":"b","title":"T b","year":1998})",
      R"({"id":"c","title":"T c","year":1998})",
      R"({"id":"d","title":"T d","year":2001})",
  };
  std::mt19937 rng(7);
  Corpus reference = from_jsonl(rows[0] + "\n" + rows[1] + "\n" + rows[2] + "\n" + rows[3] + "\n");
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(rows.begin(), rows.end(), rng);
    std::string body;
    for (const auto& r : rows) body += r + "\n";
    CHECK(from_jsonl(body) == reference);
  }
}

TEST_CASE("emit/ingest round trip is idempotent") {
  Corpus c = from_csv("id,title,abstract,year,src\n"
                      "b,Title B,Abs B,1999,web\n"
                      "a,Title A,,1998,print\n");
  std::ostringstream out;
  emit_jsonl(c, out);
  Corpus again = from_jsonl(out.str());
  CHECK(again == c);

  std::ostringstream out2;
  emit_jsonl(again, out2);
  CHECK(out2.str() == out.str());
}

TEST_CASE("nfc normalization unifies equal glyph sequences") {
  // Same id written composed vs decomposed must collide.
  std::string composed = "caf\xc3\xa9";
  std::string decomposed = "cafe\xcc\x81";
  CHECK_THROWS_AS(from_csv("id,title,year\n" + composed + ",T1,1998\n" + decomposed +
                           ",T2,1999\n"),
                  Error);
  Corpus c = from_csv("id,title,year\nx," + decomposed + " study,1998\n");
  CHECK(c.at(0).title == composed + " study");
}

TEST_CASE("corpus summary") {
  CHECK(corpus_summary(Corpus()).document_count == 0);
  CHECK(corpus_summary(Corpus()).per_year.empty());

  Corpus c = from_jsonl(R"({"id":"a","title":"T","year":1998})" "\n"
                        R"({"id":"b","title":"T","year":1998})" "\n"
                        R"({"id":"c","title":"T","year":1999})" "\n");
  CorpusSummary s = corpus_summary(c);
  CHECK(s.document_count == 3);
  CHECK(s.min_year == 1998);
  CHECK(s.max_year == 1999);
  CHECK(s.per_year.at(1998) == 2);
  CHECK(s.per_year.at(1999) == 1);

  std::size_t total = 0;
  for (const auto& [year, n] : s.per_year) total += n;
  CHECK(total == s.document_count);
}

TEST_CASE("417-record fixture summary") {
  Corpus c = ingest_records(testsupport::fixture_path("journal417_corpus.jsonl"),
                            CorpusFormat::kJsonl);
  CorpusSummary s = corpus_summary(c);
  CHECK(s.document_count == 417);
  CHECK(s.min_year == 1998);
  CHECK(s.max_year == 2015);
  CHECK(s.per_year.at(1998) == 49);
}
