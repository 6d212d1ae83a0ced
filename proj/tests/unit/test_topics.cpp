#include <doctest.h>

#include <cmath>

#include "coword/error.hpp"
#include "coword/topics.hpp"

using namespace coword;

namespace {

// A 10-document corpus: docs 0..4 share terms "planted0..4" (absent
// elsewhere); every doc carries "common"; docs 5..9 get filler terms.
struct LabelFixture {
  Vocabulary vocab;
  std::vector<TermVector> vectors;

  LabelFixture() {
    std::vector<TermMultiset> docs(10);
    for (int d = 0; d < 5; ++d) {
      for (int p = 0; p < 5; ++p) docs[d]["planted" + std::to_string(p)] = 1;
      docs[d]["common"] = 1;
    }
    for (int d = 5; d < 10; ++d) {
      docs[d]["filler" + std::to_string(d % 2)] = 2;
      docs[d]["common"] = 1;
    }
    vocab = build_vocabulary(docs, 1);
    for (int d = 0; d < 10; ++d) {
      TermVector v;
      v.doc_id = "doc" + std::to_string(d);
      for (const auto& [term, count] : docs[static_cast<std::size_t>(d)]) {
        v.counts.emplace_back(*vocab.term_id(term), count);
      }
      vectors.push_back(std::move(v));
    }
  }
};

}  // namespace

TEST_CASE("singleton clusters are labeled by term frequency") {
  std::vector<TermMultiset> docs = {{{"xx", 3}, {"yy", 1}}};
  Vocabulary vocab = build_vocabulary(docs, 1);
  TermVector v;
  v.doc_id = "only";
  v.counts = {{*vocab.term_id("xx"), 3}, {*vocab.term_id("yy"), 1}};

  TopicLabel label = label_cluster({0}, {v}, vocab, 5);
  REQUIRE(label.keywords.size() == 2);
  CHECK(label.keywords[0].term == "xx");
  CHECK(label.keywords[0].score == 3.0);
  CHECK(label.keywords[1].term == "yy");
  CHECK(label.member_count == 1);
}

TEST_CASE("co-word score matches the hand evaluation") {
  LabelFixture f;
  // "planted0" is in all 5 member docs and nowhere else in the 10-doc
  // corpus: score = 5 * ln(11/6).
  TopicLabel label = label_cluster({0, 1, 2, 3, 4}, f.vectors, f.vocab, 10);
  REQUIRE(!label.keywords.empty());
  double expected = 5.0 * std::log(11.0 / 6.0);
  CHECK(std::abs(expected - 3.030679017851578) < 1e-12);

  bool found = false;
  for (const auto& kw : label.keywords) {
    if (kw.term == "planted0") {
      found = true;
      CHECK(std::abs(kw.score - expected) < 1e-12);
    }
  }
  CHECK(found);

  // "common" has df 10 (= N), score 5 * ln(11/11) = 0; it must rank below
  // every planted term.
  CHECK(label.keywords[0].term == "planted0");
}

TEST_CASE("planted terms are exactly the top five keywords") {
  LabelFixture f;
  TopicLabel label = label_cluster({0, 1, 2, 3, 4}, f.vectors, f.vocab, 5);
  REQUIRE(label.keywords.size() == 5);
  for (int p = 0; p < 5; ++p) {
    CHECK(label.keywords[static_cast<std::size_t>(p)].term == "planted" + std::to_string(p));
  }
  // Ties (equal cdf and df) resolve lexicographically.
  for (std::size_t i = 1; i < label.keywords.size(); ++i) {
    CHECK(label.keywords[i - 1].score >= label.keywords[i].score);
    if (label.keywords[i - 1].score == label.keywords[i].score) {
      CHECK(label.keywords[i - 1].term < label.keywords[i].term);
    }
  }
}

TEST_CASE("terms in a single member are not co-words") {
  std::vector<TermMultiset> docs = {{{"shared", 1}, {"solo", 5}}, {{"shared", 1}}, {{"other", 1}}};
  Vocabulary vocab = build_vocabulary(docs, 1);
  std::vector<TermVector> vectors;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    TermVector v;
    v.doc_id = "doc" + std::to_string(d);
    for (const auto& [term, count] : docs[d]) v.counts.emplace_back(*vocab.term_id(term), count);
    vectors.push_back(std::move(v));
  }
  TopicLabel label = label_cluster({0, 1}, vectors, vocab, 5);
  REQUIRE(label.keywords.size() == 1);
  CHECK(label.keywords[0].term == "shared");  // "solo" appears in one member only
}

TEST_CASE("larger k extends the list without reordering the prefix") {
  LabelFixture f;
  TopicLabel small = label_cluster({0, 1, 2, 3, 4}, f.vectors, f.vocab, 3);
  TopicLabel large = label_cluster({0, 1, 2, 3, 4}, f.vectors, f.vocab, 6);
  REQUIRE(small.keywords.size() == 3);
  REQUIRE(large.keywords.size() >= 3);
  for (std::size_t i = 0; i < small.keywords.size(); ++i) {
    CHECK(small.keywords[i] == large.keywords[i]);
  }
}

TEST_CASE("label errors") {
  LabelFixture f;
  CHECK_THROWS_AS(label_cluster({}, f.vectors, f.vocab, 5), Error);
  CHECK_THROWS_AS(label_cluster({0}, f.vectors, f.vocab, 0), Error);
}

TEST_CASE("build_assignment orders topics and checks coverage") {
  std::vector<std::string> ids = {"a", "b", "c", "d", "e", "f", "g", "h"};

  CutResult cut;
  cut.k_requested = 2;
  cut.topics.push_back({1, 10, {0, 1, 2, 3, 4}});
  cut.topics.push_back({2, 11, {5, 6, 7}});
  std::vector<TopicLabel> labels(2);
  labels[0].topic_id = 1;
  labels[1].topic_id = 2;

  TopicAssignment a = build_assignment(cut, labels, ids);
  CHECK(a.topics[0].members.size() == 5);  // biggest first
  CHECK(a.doc_topic.at("a") == 1);
  CHECK(a.doc_topic.at("f") == 2);
  CHECK(a.doc_topic.size() == 8);

  // A document missing from the cut is a coverage gap.
  CutResult gap = cut;
  gap.topics[1].members = {5, 6};
  try {
    build_assignment(gap, labels, ids);
    FAIL("expected COVERAGE_GAP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCoverageGap);
    CHECK(std::string(e.what()).find("'h'") != std::string::npos);
  }
}

TEST_CASE("single topic covering everything is a valid assignment") {
  std::vector<std::string> ids = {"a", "b"};
  CutResult cut;
  cut.k_requested = 1;
  cut.topics.push_back({1, 2, {0, 1}});
  std::vector<TopicLabel> labels(1);
  labels[0].topic_id = 1;
  TopicAssignment a = build_assignment(cut, labels, ids);
  CHECK(a.topics.size() == 1);
  CHECK(a.doc_topic.size() == 2);
}

TEST_CASE("topic display label fallbacks") {
  AssignedTopic t;
  t.topic_id = 3;
  CHECK(TopicAssignment::topic_display(t) == "topic 3");
  t.label.keywords = {{"alpha", 2.0}, {"beta", 1.0}};
  CHECK(TopicAssignment::topic_display(t) == "alpha beta");
  t.display_label = "Named";
  CHECK(TopicAssignment::topic_display(t) == "Named");
}
