#include <doctest.h>

#include <random>

#include "coword/error.hpp"
#include "coword/lexer.hpp"
#include "../support/temp_dir.hpp"

using namespace coword;

namespace {

TermMultiset extract(const std::string& s, const LexerConfig& cfg = {}) {
  return extract_terms(tokenize(s), cfg);
}

}  // namespace

TEST_CASE("tokenize splits scripts and lowercases latin") {
  auto toks = tokenize("Cross-Strait Relations");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0] == Token{"cross", text::Script::kLatin});
  CHECK(toks[1] == Token{"strait", text::Script::kLatin});
  CHECK(toks[2] == Token{"relations", text::Script::kLatin});

  auto cjk = tokenize("兩岸關係");
  REQUIRE(cjk.size() == 1);
  CHECK(cjk[0] == Token{"兩岸關係", text::Script::kCjk});

  auto mixed = tokenize("WTO加入之後");
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0] == Token{"wto", text::Script::kLatin});
  CHECK(mixed[1] == Token{"加入之後", text::Script::kCjk});

  CHECK(tokenize("").empty());
  CHECK(tokenize("  ,;--  ").empty());

  auto digits = tokenize("abc123def");
  REQUIRE(digits.size() == 3);
  CHECK(digits[1] == Token{"123", text::Script::kDigit});
}

TEST_CASE("tokens never span script classes") {
  std::vector<std::string> samples = {"台灣WTO 2001 entry", "αβγ mixed 中文 text99",
                                      "Ελλάδα China研究", "a中b文c"};
  for (const auto& s : samples) {
    for (const Token& t : tokenize(s)) {
      auto cps = text::decode_utf8(t.surface);
      REQUIRE(!cps.empty());
      for (char32_t cp : cps) {
        CHECK(text::classify(cp) == t.script);
      }
    }
  }
}

TEST_CASE("extract_terms passthrough, stopwords, noise") {
  CHECK(extract("cross strait") == TermMultiset{{"cross", 1}, {"strait", 1}});

  LexerConfig stopped;
  stopped.stopwords = {"the"};
  CHECK(extract("the state", stopped) == TermMultiset{{"state", 1}});

  // Single-char latin and digits are dropped.
  CHECK(extract("a state 2001") == TermMultiset{{"state", 1}});
  // Other scripts are dropped.
  CHECK(extract("αβγ state") == TermMultiset{{"state", 1}});
}

TEST_CASE("cjk n-grams enumerate every window") {
  // 4-character run with n in [2,3]: 2-grams 經濟/濟貿/貿易, 3-grams 經濟貿/濟貿易.
  TermMultiset expected = {
      {"經濟", 1}, {"濟貿", 1}, {"貿易", 1}, {"經濟貿", 1}, {"濟貿易", 1}};
  CHECK(extract("經濟貿易") == expected);

  // Run shorter than ngram_min contributes itself.
  CHECK(extract("兩") == TermMultiset{{"兩", 1}});

  // Repeated windows accumulate counts.
  CHECK(extract("經經經")
        == TermMultiset{{"經經", 2}, {"經經經", 1}});
}

TEST_CASE("cjk n-gram instance count matches the closed form") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int len = 2 + static_cast<int>(rng() % 9);  // 2..10
    std::string run;
    for (int i = 0; i < len; ++i) {
      text::append_utf8(run, static_cast<char32_t>(0x4E00 + rng() % 500));
    }
    TermMultiset terms = extract(run);
    std::int64_t instances = 0;
    for (const auto& [term, count] : terms) instances += count;
    std::int64_t expected = std::max(len - 1, 0) + std::max(len - 2, 0);
    CHECK(instances == expected);
  }
}

TEST_CASE("bad ngram bounds") {
  LexerConfig bad;
  bad.ngram_min = 1;
  CHECK_THROWS_AS(extract("x", bad), Error);
  bad.ngram_min = 3;
  bad.ngram_max = 2;
  try {
    extract("x", bad);
    FAIL("expected BAD_CONFIG");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadConfig);
  }
}

TEST_CASE("vocabulary df/cf and min_df pruning") {
  std::vector<TermMultiset> docs = {{{"a", 1}, {"b", 1}}, {{"b", 1}}};
  Vocabulary v1 = build_vocabulary(docs, 1);
  CHECK(v1.size() == 2);
  CHECK(v1.n_docs() == 2);
  CHECK(v1.df(*v1.term_id("a")) == 1);
  CHECK(v1.df(*v1.term_id("b")) == 2);

  Vocabulary v2 = build_vocabulary(docs, 2);
  CHECK(v2.size() == 1);
  CHECK(v2.term_id("a") == std::nullopt);
  CHECK(v2.df(*v2.term_id("b")) == 2);

  Vocabulary v3 = build_vocabulary({{{"x", 3}}}, 1);
  CHECK(v3.cf(*v3.term_id("x")) == 3);
  CHECK(v3.df(*v3.term_id("x")) == 1);

  CHECK_THROWS_AS(build_vocabulary({}, 1), Error);
}

TEST_CASE("vocabulary ids follow lexicographic term order") {
  std::vector<TermMultiset> docs = {{{"zebra", 1}, {"apple", 1}, {"mid", 1}}};
  Vocabulary v = build_vocabulary(docs, 1);
  CHECK(v.term(0) == "apple");
  CHECK(v.term(1) == "mid");
  CHECK(v.term(2) == "zebra");
}

TEST_CASE("vocabulary df equals brute-force recount") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n_docs = 2 + rng() % 6;
    std::vector<TermMultiset> docs(n_docs);
    const char* pool[] = {"aa", "bb", "cc", "dd", "ee", "ff"};
    for (auto& d : docs) {
      std::size_t n_terms = rng() % 5;
      for (std::size_t t = 0; t < n_terms; ++t) d[pool[rng() % 6]] += 1 + rng() % 3;
    }
    Vocabulary v = build_vocabulary(docs, 1);
    for (std::size_t id = 0; id < v.size(); ++id) {
      auto tid = static_cast<TermId>(id);
      std::int64_t df = 0, cf = 0;
      for (const auto& d : docs) {
        auto it = d.find(v.term(tid));
        if (it != d.end()) {
          ++df;
          cf += it->second;
        }
      }
      CHECK(v.df(tid) == df);
      CHECK(v.cf(tid) == cf);
    }
  }
}

TEST_CASE("vectorize pools title and abstract with title weight") {
  std::vector<TermMultiset> docs = {{{"aa", 1}, {"bb", 1}, {"cc", 1}}};
  Vocabulary vocab = build_vocabulary(docs, 1);

  BibRecord r;
  r.id = "d1";
  r.title = "aa bb";
  r.abstract = "bb cc";

  LexerConfig cfg;
  TermVector v = vectorize(r, vocab, cfg);
  REQUIRE(v.counts.size() == 3);
  CHECK(v.counts[0] == std::pair<TermId, std::int64_t>{*vocab.term_id("aa"), 1});
  CHECK(v.counts[1] == std::pair<TermId, std::int64_t>{*vocab.term_id("bb"), 2});
  CHECK(v.counts[2] == std::pair<TermId, std::int64_t>{*vocab.term_id("cc"), 1});

  cfg.title_weight = 2;
  TermVector w = vectorize(r, vocab, cfg);
  CHECK(w.counts[0].second == 2);
  CHECK(w.counts[1].second == 3);
  CHECK(w.counts[2].second == 1);
}

TEST_CASE("vectorize drops out-of-vocabulary terms and can be empty") {
  std::vector<TermMultiset> docs = {{{"aa", 1}}};
  Vocabulary vocab = build_vocabulary(docs, 1);

  BibRecord r;
  r.id = "d1";
  r.title = "zz yy";
  r.abstract = "zz";
  TermVector v = vectorize(r, vocab, {});
  CHECK(v.empty());

  r.abstract = "aa zz";
  TermVector w = vectorize(r, vocab, {});
  REQUIRE(w.counts.size() == 1);
  CHECK(w.counts[0].second == 1);
}

TEST_CASE("stopword file parsing") {
  testsupport::TempDir tmp("stopwords");
  std::string path = tmp.write("stop.txt", "# comment line\nThe\n  and \n\n中文\n");
  auto words = load_stopwords(path);
  CHECK(words == std::set<std::string>{"the", "and", "中文"});
  CHECK_THROWS_AS(load_stopwords(tmp.file("missing.txt")), Error);
}

TEST_CASE("extraction is deterministic") {
  std::string s = "WTO加入之後 Cross-Strait 經濟貿易 trade";
  CHECK(extract(s) == extract(s));
}
