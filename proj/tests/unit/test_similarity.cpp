#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "coword/error.hpp"
#include "coword/similarity.hpp"

using namespace coword;

namespace {

WeightedVector wv(std::initializer_list<std::pair<TermId, double>> entries) {
  WeightedVector v;
  v.entries.assign(entries.begin(), entries.end());
  return v;
}

// Random sparse nonnegative-weight vector over term ids [0, width).
WeightedVector random_vector(std::mt19937& rng, int width, bool allow_empty = true) {
  WeightedVector v;
  std::uniform_int_distribution<int> count_dist(allow_empty ? 0 : 1, 6);
  std::uniform_real_distribution<double> weight_dist(0.25, 9.0);
  int n = count_dist(rng);
  std::set<TermId> ids;
  while (static_cast<int>(ids.size()) < n) ids.insert(static_cast<TermId>(rng() % width));
  for (TermId id : ids) v.entries.emplace_back(id, weight_dist(rng));
  return v;
}

constexpr SimilarityMeasure kAllMeasures[] = {
    SimilarityMeasure::kJaccardSet, SimilarityMeasure::kJaccardWeighted,
    SimilarityMeasure::kCosine, SimilarityMeasure::kEuclidean};

}  // namespace

TEST_CASE("tfidf weight formula") {
  CHECK(tfidf_weight(5, 8, 8) == 0.0);   // df == N
  CHECK(tfidf_weight(0, 3, 8) == 0.0);   // tf == 0
  CHECK(tfidf_weight(0, 99, 8) == 0.0);  // tf == 0 wins over bad df
  // 3 * ln 8, evaluated by hand.
  CHECK(std::abs(tfidf_weight(3, 1, 8) - 6.238324625039507) < 1e-12);

  CHECK_THROWS_AS(tfidf_weight(1, 0, 8), Error);
  try {
    tfidf_weight(1, 9, 8);
    FAIL("expected BAD_DF");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadDf);
  }
}

TEST_CASE("identity similarity is exactly one under every measure") {
  WeightedVector u = wv({{0, 2.0}, {3, 1.0}, {7, 0.5}});
  for (auto m : kAllMeasures) CHECK(similarity(u, u, m) == 1.0);
}

TEST_CASE("set jaccard on hand cases") {
  WeightedVector ab = wv({{0, 1.0}, {1, 1.0}});
  WeightedVector c = wv({{2, 1.0}});
  CHECK(similarity(ab, c, SimilarityMeasure::kJaccardSet) == 0.0);

  WeightedVector abc = wv({{0, 1.0}, {1, 1.0}, {2, 1.0}});
  WeightedVector bcd = wv({{1, 1.0}, {2, 1.0}, {3, 1.0}});
  CHECK(similarity(abc, bcd, SimilarityMeasure::kJaccardSet) == 0.5);
}

TEST_CASE("weighted jaccard on hand case") {
  WeightedVector u = wv({{0, 2.0}, {1, 1.0}});
  WeightedVector v = wv({{0, 1.0}, {1, 3.0}});
  // (min 1 + min 1) / (max 2 + max 3)
  CHECK(similarity(u, v, SimilarityMeasure::kJaccardWeighted) == 0.4);
}

TEST_CASE("empty-vector conventions") {
  WeightedVector empty;
  WeightedVector one = wv({{0, 1.0}});

  CHECK(similarity(empty, empty, SimilarityMeasure::kJaccardSet) == 1.0);
  CHECK(similarity(empty, empty, SimilarityMeasure::kJaccardWeighted) == 1.0);
  CHECK(similarity(empty, empty, SimilarityMeasure::kEuclidean) == 1.0);
  CHECK(similarity(empty, one, SimilarityMeasure::kJaccardSet) == 0.0);
  CHECK(similarity(one, empty, SimilarityMeasure::kJaccardWeighted) == 0.0);

  try {
    similarity(empty, one, SimilarityMeasure::kCosine);
    FAIL("expected ZERO_VECTOR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroVector);
  }
  // All-zero weights count as a zero vector too.
  CHECK_THROWS_AS(similarity(wv({{0, 0.0}}), one, SimilarityMeasure::kCosine), Error);
}

TEST_CASE("euclidean similarity is 1/(1+distance)") {
  CHECK(similarity(wv({{0, 1.0}}), {}, SimilarityMeasure::kEuclidean) == 0.5);
  CHECK(similarity(wv({{0, 3.0}, {1, 4.0}}), {}, SimilarityMeasure::kEuclidean) == 1.0 / 6.0);
}

TEST_CASE("cosine matches a hand evaluation") {
  WeightedVector u = wv({{0, 1.0}});
  WeightedVector v = wv({{0, 1.0}, {1, 1.0}});
  CHECK(std::abs(similarity(u, v, SimilarityMeasure::kCosine) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("apply_weighting keeps the support under tfidf") {
  std::vector<TermMultiset> docs = {{{"aa", 2}, {"bb", 1}}, {{"aa", 1}}};
  Vocabulary vocab = build_vocabulary(docs, 1);  // df(aa)=2=N, df(bb)=1

  std::vector<std::pair<TermId, std::int64_t>> counts = {{*vocab.term_id("aa"), 2},
                                                         {*vocab.term_id("bb"), 1}};
  WeightedVector raw = apply_weighting(counts, vocab, WeightingScheme::kRaw);
  WeightedVector tfidf = apply_weighting(counts, vocab, WeightingScheme::kTfidf);
  REQUIRE(raw.entries.size() == 2);
  REQUIRE(tfidf.entries.size() == 2);  // aa kept with weight 0
  CHECK(raw.entries[0].second == 2.0);
  CHECK(tfidf.entries[0].second == 0.0);
  CHECK(tfidf.entries[1].second == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("set jaccard is invariant under the weighting scheme") {
  std::mt19937 rng(101);
  const char* pool[] = {"aa", "bb", "cc", "dd", "ee", "ff", "gg", "hh"};
  std::vector<TermMultiset> docs(6);
  for (auto& d : docs) {
    for (int t = 0; t < 4; ++t) d[pool[rng() % 8]] += 1 + rng() % 3;
  }
  Vocabulary vocab = build_vocabulary(docs, 1);
  for (int trial = 0; trial < 200; ++trial) {
    auto pick = [&](const TermMultiset& d) {
      std::vector<std::pair<TermId, std::int64_t>> counts;
      for (const auto& [term, c] : d) {
        if (auto id = vocab.term_id(term)) counts.emplace_back(*id, c);
      }
      return counts;
    };
    const TermMultiset& a = docs[rng() % docs.size()];
    const TermMultiset& b = docs[rng() % docs.size()];
    double raw = similarity(apply_weighting(pick(a), vocab, WeightingScheme::kRaw),
                            apply_weighting(pick(b), vocab, WeightingScheme::kRaw),
                            SimilarityMeasure::kJaccardSet);
    double tfidf = similarity(apply_weighting(pick(a), vocab, WeightingScheme::kTfidf),
                              apply_weighting(pick(b), vocab, WeightingScheme::kTfidf),
                              SimilarityMeasure::kJaccardSet);
    CHECK(raw == tfidf);
  }
}

TEST_CASE("similarity is symmetric, bounded and one on the diagonal") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 500; ++trial) {
    WeightedVector u = random_vector(rng, 12);
    WeightedVector v = random_vector(rng, 12);
    for (auto m : kAllMeasures) {
      if (m == SimilarityMeasure::kCosine && (u.empty() || v.empty())) continue;
      double forward = similarity(u, v, m);
      double backward = similarity(v, u, m);
      CHECK(forward == backward);
      CHECK(forward >= 0.0);
      CHECK(forward <= 1.0);
      if (!u.empty() || m != SimilarityMeasure::kCosine) {
        CHECK(similarity(u, u, m) == 1.0);
      }
    }
  }
}

TEST_CASE("jaccard distance satisfies the triangle inequality") {
  std::mt19937 rng(77);
  auto random_set = [&] {
    WeightedVector v;
    for (TermId id = 0; id < 10; ++id) {
      if (rng() % 2) v.entries.emplace_back(id, 1.0);
    }
    return v;
  };
  for (int trial = 0; trial < 500; ++trial) {
    WeightedVector a = random_set(), b = random_set(), c = random_set();
    auto d = [](const WeightedVector& x, const WeightedVector& y) {
      return 1.0 - similarity(x, y, SimilarityMeasure::kJaccardSet);
    };
    CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
  }
}

TEST_CASE("similarity matrix basics") {
  // Single vector: 1x1, unit diagonal, nothing stored.
  WeightedVector a = wv({{0, 1.0}, {1, 1.0}});
  SimilarityMatrix single = build_similarity_matrix({a}, {"d0"}, SimilarityMeasure::kJaccardSet,
                                                    0.0, 1);
  CHECK(single.size() == 1);
  CHECK(single.stored_count() == 0);
  CHECK(single.value(0, 0) == 1.0);

  // Identical pair stores an off-diagonal 1.
  SimilarityMatrix pair = build_similarity_matrix({a, a}, {"d0", "d1"},
                                                  SimilarityMeasure::kJaccardSet, 0.0, 1);
  CHECK(pair.value(0, 1) == 1.0);
  CHECK(pair.value(1, 0) == 1.0);

  CHECK_THROWS_AS(build_similarity_matrix({}, {}, SimilarityMeasure::kJaccardSet, 0.0, 1),
                  Error);
}

TEST_CASE("epsilon filters stored entries") {
  // Pairwise set-jaccard: (A,B)=0.5, (A,C)=0, (B,C)=0.25.
  WeightedVector A = wv({{0, 1.0}, {1, 1.0}});
  WeightedVector B = wv({{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}});
  WeightedVector C = wv({{2, 1.0}});
  SimilarityMatrix m = build_similarity_matrix({A, B, C}, {"a", "b", "c"},
                                               SimilarityMeasure::kJaccardSet, 0.1, 1);
  CHECK(m.stored_count() == 2);
  CHECK(m.value(0, 1) == 0.5);
  CHECK(m.value(1, 2) == 0.25);
  CHECK_FALSE(m.stored(0, 2));
  CHECK(m.value(0, 2) == 0.0);

  std::ostringstream csv;
  write_matrix_csv(m, csv);
  CHECK(csv.str() == "i,j,value\n0,1,0.5\n1,2,0.25\n");
}

TEST_CASE("matrix construction is schedule-independent") {
  std::mt19937 rng(31);
  std::vector<WeightedVector> vectors;
  std::vector<std::string> ids;
  for (int i = 0; i < 24; ++i) {
    vectors.push_back(random_vector(rng, 16, false));
    ids.push_back("d" + std::to_string(i));
  }
  SimilarityMatrix m1 = build_similarity_matrix(vectors, ids, SimilarityMeasure::kJaccardWeighted,
                                                0.0, 1);
  SimilarityMatrix m4 = build_similarity_matrix(vectors, ids, SimilarityMeasure::kJaccardWeighted,
                                                0.0, 4);
  REQUIRE(m1.stored_count() == m4.stored_count());
  for (std::size_t k = 0; k < m1.entries().size(); ++k) {
    CHECK(m1.entries()[k].i == m4.entries()[k].i);
    CHECK(m1.entries()[k].j == m4.entries()[k].j);
    CHECK(m1.entries()[k].value == m4.entries()[k].value);
  }
}
