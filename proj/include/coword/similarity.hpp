#ifndef COWORD_SIMILARITY_HPP
#define COWORD_SIMILARITY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coword/lexer.hpp"

namespace coword {

enum class WeightingScheme { kRaw, kTfidf };
enum class SimilarityMeasure { kJaccardSet, kJaccardWeighted, kCosine, kEuclidean };

// tf * ln(N/df). Zero when tf is zero or df equals the corpus size.
double tfidf_weight(std::int64_t tf, std::int64_t df, std::int64_t n_docs);

// Term weights sorted by id. The support (the stored ids) is exactly the
// set of terms with tf >= 1, even when a weight evaluates to zero, so the
// set-based Jaccard measure is independent of the weighting scheme.
struct WeightedVector {
  std::vector<std::pair<TermId, double>> entries;

  bool empty() const { return entries.empty(); }
};

WeightedVector apply_weighting(const std::vector<std::pair<TermId, std::int64_t>>& counts,
                               const Vocabulary& vocabulary, WeightingScheme scheme);

inline WeightedVector apply_weighting(const TermVector& v, const Vocabulary& vocabulary,
                                      WeightingScheme scheme) {
  return apply_weighting(v.counts, vocabulary, scheme);
}

// Pairwise similarity in [0, 1]. Conventions: two empty vectors are fully
// similar (1) under the Jaccard measures, one empty vector gives 0; COSINE
// throws ZERO_VECTOR when an operand has no nonzero weight; EUCLIDEAN maps
// distance d to similarity 1/(1+d).
double similarity(const WeightedVector& u, const WeightedVector& v, SimilarityMeasure measure);

// Symmetric pairwise similarities with unit diagonal; off-diagonal values
// <= epsilon are not stored.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<std::string> item_ids, double epsilon);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& item_ids() const { return ids_; }
  double epsilon() const { return epsilon_; }

  // 1 on the diagonal, 0 for absent pairs.
  double value(std::size_t i, std::size_t j) const;
  bool stored(std::size_t i, std::size_t j) const;
  std::size_t stored_count() const { return entries_.size(); }

  struct Entry {
    std::uint32_t i, j;  // i < j
    double value;
  };
  const std::vector<Entry>& entries() const { return entries_; }

  // Values <= epsilon are ignored. Keeps entries sorted by (i, j).
  void add(std::size_t i, std::size_t j, double value);

 private:
  std::vector<std::string> ids_;
  double epsilon_;
  std::vector<Entry> entries_;
};

SimilarityMatrix build_similarity_matrix(const std::vector<WeightedVector>& vectors,
                                         const std::vector<std::string>& item_ids,
                                         SimilarityMeasure measure, double epsilon,
                                         int threads);

// "i,j,value" triples with i < j, full precision.
void write_matrix_csv(const SimilarityMatrix& matrix, std::ostream& out);

const char* weighting_name(WeightingScheme w);
const char* measure_name(SimilarityMeasure m);

}  // namespace coword

#endif  // COWORD_SIMILARITY_HPP
