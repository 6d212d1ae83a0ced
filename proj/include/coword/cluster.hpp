#ifndef COWORD_CLUSTER_HPP
#define COWORD_CLUSTER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coword/lexer.hpp"
#include "coword/similarity.hpp"

namespace coword {

using CountVector = std::vector<std::pair<TermId, std::int64_t>>;  // sorted by id

struct StageConfig {
  double theta_initial = 0.5;
  double decay = 0.8;        // theta_s = theta_initial * decay^(s-1)
  double theta_min = 0.05;   // stages stop once theta_s < theta_min
  int max_stages = 20;
};

enum class Linkage { kProfile, kComplete };

struct ClusterNode {
  int id = 0;                     // leaves: corpus position; internal: creation order
  std::vector<int> members;       // leaf positions, ascending
  std::vector<int> children;      // empty for leaves, two children for merges
  double similarity = 1.0;        // merge similarity; 1 for leaves
  int stage = 0;                  // 0 for leaves

  bool is_leaf() const { return children.empty(); }
};

// Merge forest over all documents. Leaves are numbered by corpus position;
// documents with empty term vectors stay permanent singleton roots and are
// listed in excluded_docs.
struct ClusterTree {
  std::vector<ClusterNode> nodes;        // node id == index
  std::vector<int> roots;                // ascending
  std::vector<double> stage_thresholds;  // theta of every executed stage
  std::vector<int> excluded_docs;        // leaf positions excluded from merging
  std::size_t n_docs = 0;
};

// Element-wise sum of the members' term vectors.
CountVector cluster_profile(const std::vector<int>& members,
                            const std::vector<TermVector>& vectors);

// Everything the merge rule needs to compare two active clusters.
struct ClusterContext {
  const std::vector<TermVector>* vectors = nullptr;
  const Vocabulary* vocabulary = nullptr;
  WeightingScheme weighting = WeightingScheme::kRaw;
  SimilarityMeasure measure = SimilarityMeasure::kJaccardSet;
  Linkage linkage = Linkage::kProfile;
  int threads = 1;
};

// One merge pass: every active cluster picks its most similar partner
// (ties toward the smaller node id); pairs that choose each other and meet
// the threshold are returned, ordered by smaller member id. The returned
// similarity is the pair's value at selection time.
struct MergePair {
  int a, b;  // node ids, a < b
  double similarity;
};
std::vector<MergePair> cluster_stage(const std::vector<int>& active,
                                     const std::vector<ClusterNode>& nodes,
                                     const ClusterContext& ctx, double theta);

// Multi-stage agglomeration: stage s applies threshold
// theta_initial * decay^(s-1), repeating merge passes at that threshold
// until none succeeds, then moves to the next stage. Stops when a single
// mergeable cluster remains, theta falls below theta_min, or max_stages is
// exhausted. Requires at least two documents with nonempty vectors.
ClusterTree run_multistage(const std::vector<TermVector>& doc_vectors,
                           const Vocabulary& vocabulary, WeightingScheme weighting,
                           SimilarityMeasure measure, Linkage linkage,
                           const StageConfig& stages, int threads);

// One topic of a tree cut; topic ids are 1-based, ordered by descending
// member count with ties toward the lexicographically smallest member doc id.
struct CutTopic {
  int topic_id = 0;
  int node_id = 0;
  std::vector<int> members;  // leaf positions, ascending
};

struct CutResult {
  int k_requested = 0;
  std::vector<CutTopic> topics;  // ordered by topic_id
};

// Splits the weakest merges first (lowest similarity, ties toward the
// smaller node id) until the frontier reaches k nodes or only leaves remain.
CutResult cut_tree(const ClusterTree& tree, int k, const std::vector<std::string>& doc_ids);

// Export: tree as a JSON value lives in artifacts.hpp; the text dendrogram
// writes one Newick-style line per root, annotating internal nodes with
// their merge similarity.
void write_newick(const ClusterTree& tree, const std::vector<std::string>& doc_ids,
                  std::ostream& out);

const char* linkage_name(Linkage l);

}  // namespace coword

#endif  // COWORD_CLUSTER_HPP
