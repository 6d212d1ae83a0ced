#include "coword/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "coword/error.hpp"
#include "coword/parallel.hpp"

namespace coword {

double tfidf_weight(std::int64_t tf, std::int64_t df, std::int64_t n_docs) {
  if (tf == 0) return 0.0;
  if (df < 1 || df > n_docs) {
    throw Error(ErrorCode::kBadDf, "document frequency " + std::to_string(df) +
                                       " outside [1, " + std::to_string(n_docs) + "]");
  }
  if (df == n_docs) return 0.0;
  return static_cast<double>(tf) *
         std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

WeightedVector apply_weighting(const std::vector<std::pair<TermId, std::int64_t>>& counts,
                               const Vocabulary& vocabulary, WeightingScheme scheme) {
  WeightedVector w;
  w.entries.reserve(counts.size());
  for (const auto& [id, tf] : counts) {
    double value = scheme == WeightingScheme::kRaw
                       ? static_cast<double>(tf)
                       : tfidf_weight(tf, vocabulary.df(id), vocabulary.n_docs());
    w.entries.emplace_back(id, value);
  }
  return w;
}

namespace {

bool all_zero(const WeightedVector& v) {
  return std::all_of(v.entries.begin(), v.entries.end(),
                     [](const auto& e) { return e.second == 0.0; });
}

double jaccard_set(const WeightedVector& u, const WeightedVector& v) {
  std::size_t i = 0, j = 0, both = 0;
  while (i < u.entries.size() && j < v.entries.size()) {
    TermId a = u.entries[i].first;
    TermId b = v.entries[j].first;
    if (a == b) { ++both; ++i; ++j; }
    else if (a < b) ++i;
    else ++j;
  }
  std::size_t uni = u.entries.size() + v.entries.size() - both;
  if (uni == 0) return 1.0;  // 0/0 := 1
  return static_cast<double>(both) / static_cast<double>(uni);
}

double jaccard_weighted(const WeightedVector& u, const WeightedVector& v) {
  if (u.empty() != v.empty()) return 0.0;
  double min_sum = 0.0, max_sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.entries.size() || j < v.entries.size()) {
    double a = 0.0, b = 0.0;
    if (j >= v.entries.size() ||
        (i < u.entries.size() && u.entries[i].first < v.entries[j].first)) {
      a = u.entries[i++].second;
    } else if (i >= u.entries.size() || v.entries[j].first < u.entries[i].first) {
      b = v.entries[j++].second;
    } else {
      a = u.entries[i++].second;
      b = v.entries[j++].second;
    }
    min_sum += std::min(a, b);
    max_sum += std::max(a, b);
  }
  if (max_sum == 0.0) return 1.0;  // 0/0 := 1
  return min_sum / max_sum;
}

// Caller rejects zero vectors first.
double cosine(const WeightedVector& u, const WeightedVector& v) {
  double dot = 0.0, uu = 0.0, vv = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.entries.size() || j < v.entries.size()) {
    double a = 0.0, b = 0.0;
    if (j >= v.entries.size() ||
        (i < u.entries.size() && u.entries[i].first < v.entries[j].first)) {
      a = u.entries[i++].second;
    } else if (i >= u.entries.size() || v.entries[j].first < u.entries[i].first) {
      b = v.entries[j++].second;
    } else {
      a = u.entries[i++].second;
      b = v.entries[j++].second;
    }
    dot += a * b;
    uu += a * a;
    vv += b * b;
  }
  double value = dot / std::sqrt(uu * vv);
  return std::clamp(value, 0.0, 1.0);
}

double euclidean_similarity(const WeightedVector& u, const WeightedVector& v) {
  double sq = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.entries.size() || j < v.entries.size()) {
    double a = 0.0, b = 0.0;
    if (j >= v.entries.size() ||
        (i < u.entries.size() && u.entries[i].first < v.entries[j].first)) {
      a = u.entries[i++].second;
    } else if (i >= u.entries.size() || v.entries[j].first < u.entries[i].first) {
      b = v.entries[j++].second;
    } else {
      a = u.entries[i++].second;
      b = v.entries[j++].second;
    }
    double d = a - b;
    sq += d * d;
  }
  return 1.0 / (1.0 + std::sqrt(sq));
}

}  // namespace

double similarity(const WeightedVector& u, const WeightedVector& v, SimilarityMeasure measure) {
  if (measure == SimilarityMeasure::kCosine && (all_zero(u) || all_zero(v))) {
    throw Error(ErrorCode::kZeroVector, "cosine similarity is undefined for a zero vector");
  }
  if (u.entries == v.entries) return 1.0;
  switch (measure) {
    case SimilarityMeasure::kJaccardSet: return jaccard_set(u, v);
    case SimilarityMeasure::kJaccardWeighted: return jaccard_weighted(u, v);
    case SimilarityMeasure::kCosine: return cosine(u, v);
    case SimilarityMeasure::kEuclidean: return euclidean_similarity(u, v);
  }
  throw Error(ErrorCode::kInternal, "unknown similarity measure");
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> item_ids, double epsilon)
    : ids_(std::move(item_ids)), epsilon_(epsilon) {
  if (epsilon < 0.0 || epsilon >= 1.0) {
    throw Error(ErrorCode::kBadConfig, "similarity epsilon must be in [0, 1)");
  }
}

void SimilarityMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i == j || i >= ids_.size() || j >= ids_.size()) {
    throw Error(ErrorCode::kInternal, "similarity matrix index out of range");
  }
  if (i > j) std::swap(i, j);
  if (value <= epsilon_) return;
  Entry e{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), value};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e, [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  entries_.insert(it, e);
}

bool SimilarityMatrix::stored(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  Entry probe{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return a.i != b.i ? a.i < b.i : a.j < b.j;
                             });
  return it != entries_.end() && it->i == probe.i && it->j == probe.j;
}

double SimilarityMatrix::value(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  if (i > j) std::swap(i, j);
  Entry probe{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return a.i != b.i ? a.i < b.i : a.j < b.j;
                             });
  if (it != entries_.end() && it->i == probe.i && it->j == probe.j) return it->value;
  return 0.0;
}

SimilarityMatrix build_similarity_matrix(const std::vector<WeightedVector>& vectors,
                                         const std::vector<std::string>& item_ids,
                                         SimilarityMeasure measure, double epsilon,
                                         int threads) {
  if (vectors.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "similarity matrix requires at least one vector");
  }
  if (vectors.size() != item_ids.size()) {
    throw Error(ErrorCode::kInternal, "vector/id count mismatch");
  }

  std::size_t n = vectors.size();
  std::vector<std::vector<SimilarityMatrix::Entry>> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = similarity(vectors[i], vectors[j], measure);
      if (v > epsilon) {
        rows[i].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
      }
    }
  });

  SimilarityMatrix m(item_ids, epsilon);
  std::vector<SimilarityMatrix::Entry> flat;
  for (auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  // Rows are produced in index order, so flat is already sorted by (i, j).
  for (const auto& e : flat) m.add(e.i, e.j, e.value);
  return m;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_matrix_csv(const SimilarityMatrix& matrix, std::ostream& out) {
  out << "i,j,value\n";
  for (const auto& e : matrix.entries()) {
    out << e.i << "," << e.j << "," << format_double(e.value) << "\n";
  }
}

const char* weighting_name(WeightingScheme w) {
  return w == WeightingScheme::kRaw ? "raw" : "tfidf";
}

const char* measure_name(SimilarityMeasure m) {
  switch (m) {
    case SimilarityMeasure::kJaccardSet: return "jaccard_set";
    case SimilarityMeasure::kJaccardWeighted: return "jaccard_weighted";
    case SimilarityMeasure::kCosine: return "cosine";
    case SimilarityMeasure::kEuclidean: return "euclidean";
  }
  return "unknown";
}

}  // namespace coword
