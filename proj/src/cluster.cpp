#include "coword/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "coword/error.hpp"
#include "coword/parallel.hpp"

namespace coword {

CountVector cluster_profile(const std::vector<int>& members,
                            const std::vector<TermVector>& vectors) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyCluster, "cluster profile of an empty member set");
  }
  std::map<TermId, std::int64_t> sum;
  for (int pos : members) {
    for (const auto& [id, count] : vectors.at(static_cast<std::size_t>(pos)).counts) {
      sum[id] += count;
    }
  }
  return CountVector(sum.begin(), sum.end());
}

namespace {

// Pairwise similarity of active clusters under the configured linkage.
// Values are computed in a fixed per-pair order, so results do not depend
// on the thread count.
class PairSimilarity {
 public:
  PairSimilarity(const std::vector<int>& active, const std::vector<ClusterNode>& nodes,
                 const ClusterContext& ctx)
      : active_(active), nodes_(nodes), ctx_(ctx) {
    if (ctx_.linkage == Linkage::kProfile) {
      profiles_.resize(active_.size());
      for (std::size_t p = 0; p < active_.size(); ++p) {
        const ClusterNode& node = nodes_[static_cast<std::size_t>(active_[p])];
        profiles_[p] = apply_weighting(cluster_profile(node.members, *ctx_.vectors),
                                       *ctx_.vocabulary, ctx_.weighting);
      }
    } else {
      docs_.resize(ctx_.vectors->size());
      for (std::size_t d = 0; d < docs_.size(); ++d) {
        docs_[d] = apply_weighting((*ctx_.vectors)[d], *ctx_.vocabulary, ctx_.weighting);
      }
    }
  }

  double operator()(std::size_t p, std::size_t q) const {
    if (ctx_.linkage == Linkage::kProfile) {
      return similarity(profiles_[p], profiles_[q], ctx_.measure);
    }
    // Complete linkage: the weakest cross-document similarity.
    const ClusterNode& a = nodes_[static_cast<std::size_t>(active_[p])];
    const ClusterNode& b = nodes_[static_cast<std::size_t>(active_[q])];
    double worst = 1.0;
    for (int x : a.members) {
      for (int y : b.members) {
        worst = std::min(worst, similarity(docs_[static_cast<std::size_t>(x)],
                                           docs_[static_cast<std::size_t>(y)], ctx_.measure));
      }
    }
    return worst;
  }

 private:
  const std::vector<int>& active_;
  const std::vector<ClusterNode>& nodes_;
  const ClusterContext& ctx_;
  std::vector<WeightedVector> profiles_;
  std::vector<WeightedVector> docs_;
};

}  // namespace

std::vector<MergePair> cluster_stage(const std::vector<int>& active,
                                     const std::vector<ClusterNode>& nodes,
                                     const ClusterContext& ctx, double theta) {
  std::size_t m = active.size();
  if (m < 2) return {};

  PairSimilarity pair_sim(active, nodes, ctx);

  // Full m x m similarity table; rows filled independently.
  std::vector<std::vector<double>> sim(m, std::vector<double>(m, 0.0));
  parallel_for(m, ctx.threads, [&](std::size_t p) {
    for (std::size_t q = p + 1; q < m; ++q) sim[p][q] = pair_sim(p, q);
  });
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) sim[q][p] = sim[p][q];
  }

  // Most similar partner per cluster; `active` is ascending, so scanning in
  // index order with a strict comparison breaks ties toward the smaller id.
  std::vector<std::size_t> best(m);
  for (std::size_t p = 0; p < m; ++p) {
    std::size_t arg = p == 0 ? 1 : 0;
    for (std::size_t q = 0; q < m; ++q) {
      if (q == p) continue;
      if (sim[p][q] > sim[p][arg]) arg = q;
    }
    best[p] = arg;
  }

  std::vector<MergePair> pairs;
  for (std::size_t p = 0; p < m; ++p) {
    std::size_t q = best[p];
    if (q > p && best[q] == p && sim[p][q] >= theta) {
      pairs.push_back(MergePair{active[p], active[q], sim[p][q]});
    }
  }
  return pairs;
}

ClusterTree run_multistage(const std::vector<TermVector>& doc_vectors,
                           const Vocabulary& vocabulary, WeightingScheme weighting,
                           SimilarityMeasure measure, Linkage linkage,
                           const StageConfig& stages, int threads) {
  if (!(stages.theta_min > 0.0) || stages.theta_min > stages.theta_initial ||
      stages.theta_initial > 1.0 || !(stages.decay > 0.0) || !(stages.decay < 1.0) ||
      stages.max_stages < 1) {
    throw Error(ErrorCode::kBadConfig, "invalid stage schedule parameters");
  }
  if (doc_vectors.size() < 2) {
    throw Error(ErrorCode::kTooFewDocs, "clustering requires at least 2 documents, got " +
                                            std::to_string(doc_vectors.size()));
  }

  ClusterTree tree;
  tree.n_docs = doc_vectors.size();
  tree.nodes.reserve(doc_vectors.size() * 2);

  std::vector<int> active;
  for (std::size_t i = 0; i < doc_vectors.size(); ++i) {
    ClusterNode leaf;
    leaf.id = static_cast<int>(i);
    leaf.members = {static_cast<int>(i)};
    tree.nodes.push_back(std::move(leaf));
    if (doc_vectors[i].empty()) {
      tree.excluded_docs.push_back(static_cast<int>(i));
    } else {
      active.push_back(static_cast<int>(i));
    }
  }
  if (active.size() < 2) {
    throw Error(ErrorCode::kTooFewDocs,
                "clustering requires at least 2 documents with nonempty term vectors");
  }

  ClusterContext ctx;
  ctx.vectors = &doc_vectors;
  ctx.vocabulary = &vocabulary;
  ctx.weighting = weighting;
  ctx.measure = measure;
  ctx.linkage = linkage;
  ctx.threads = threads;

  double theta = stages.theta_initial;
  for (int s = 1; s <= stages.max_stages && theta >= stages.theta_min && active.size() > 1;
       ++s, theta *= stages.decay) {
    tree.stage_thresholds.push_back(theta);
    while (active.size() > 1) {
      std::vector<MergePair> pairs = cluster_stage(active, tree.nodes, ctx, theta);
      if (pairs.empty()) break;
      for (const MergePair& p : pairs) {
        ClusterNode merged;
        merged.id = static_cast<int>(tree.nodes.size());
        merged.children = {p.a, p.b};
        merged.similarity = p.similarity;
        merged.stage = s;
        const auto& ma = tree.nodes[static_cast<std::size_t>(p.a)].members;
        const auto& mb = tree.nodes[static_cast<std::size_t>(p.b)].members;
        merged.members.resize(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), merged.members.begin());

        std::erase(active, p.a);
        std::erase(active, p.b);
        active.push_back(merged.id);  // ids grow monotonically; stays sorted
        tree.nodes.push_back(std::move(merged));
      }
    }
  }

  tree.roots = active;
  tree.roots.insert(tree.roots.end(), tree.excluded_docs.begin(), tree.excluded_docs.end());
  std::sort(tree.roots.begin(), tree.roots.end());
  return tree;
}

CutResult cut_tree(const ClusterTree& tree, int k, const std::vector<std::string>& doc_ids) {
  if (k < 1) throw Error(ErrorCode::kBadConfig, "cut size K must be >= 1");
  if (doc_ids.size() != tree.n_docs) {
    throw Error(ErrorCode::kInternal, "doc id list does not match tree size");
  }

  std::vector<int> frontier = tree.roots;
  while (frontier.size() < static_cast<std::size_t>(k)) {
    // Weakest internal merge first, ties toward the smaller node id.
    int pick = -1;
    for (int id : frontier) {
      const ClusterNode& node = tree.nodes[static_cast<std::size_t>(id)];
      if (node.is_leaf()) continue;
      if (pick < 0) {
        pick = id;
        continue;
      }
      const ClusterNode& best = tree.nodes[static_cast<std::size_t>(pick)];
      if (node.similarity < best.similarity ||
          (node.similarity == best.similarity && node.id < best.id)) {
        pick = id;
      }
    }
    if (pick < 0) break;  // all leaves
    std::erase(frontier, pick);
    const ClusterNode& node = tree.nodes[static_cast<std::size_t>(pick)];
    frontier.insert(frontier.end(), node.children.begin(), node.children.end());
  }

  struct Ranked {
    int node_id;
    std::size_t size;
    const std::string* min_doc;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(frontier.size());
  for (int id : frontier) {
    const ClusterNode& node = tree.nodes[static_cast<std::size_t>(id)];
    const std::string* min_doc = nullptr;
    for (int pos : node.members) {
      const std::string& d = doc_ids[static_cast<std::size_t>(pos)];
      if (!min_doc || d < *min_doc) min_doc = &d;
    }
    ranked.push_back({id, node.members.size(), min_doc});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.size != b.size) return a.size > b.size;
    return *a.min_doc < *b.min_doc;
  });

  CutResult cut;
  cut.k_requested = k;
  cut.topics.reserve(ranked.size());
  for (std::size_t t = 0; t < ranked.size(); ++t) {
    CutTopic topic;
    topic.topic_id = static_cast<int>(t) + 1;
    topic.node_id = ranked[t].node_id;
    topic.members = tree.nodes[static_cast<std::size_t>(ranked[t].node_id)].members;
    cut.topics.push_back(std::move(topic));
  }
  return cut;
}

namespace {

std::string newick_name(const std::string& raw) {
  bool safe = !raw.empty();
  for (char c : raw) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ':' || c == ';' || c == ',' ||
        c == '\'' || c == '"' || c == ' ' || c == '\t') {
      safe = false;
      break;
    }
  }
  if (safe) return raw;
  std::string quoted = "'";
  for (char c : raw) {
    if (c == '\'') quoted += "''";
    else quoted.push_back(c);
  }
  quoted.push_back('\'');
  return quoted;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_node(const ClusterTree& tree, const std::vector<std::string>& doc_ids, int id,
                double parent_height, std::ostream& out) {
  const ClusterNode& node = tree.nodes[static_cast<std::size_t>(id)];
  double height = 1.0 - node.similarity;
  if (node.is_leaf()) {
    out << newick_name(doc_ids[static_cast<std::size_t>(node.members[0])]);
  } else {
    out << "(";
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      if (c) out << ",";
      write_node(tree, doc_ids, node.children[c], height, out);
    }
    out << ")" << fmt6(node.similarity);
  }
  if (parent_height >= 0.0) out << ":" << fmt6(parent_height - height);
}

}  // namespace

void write_newick(const ClusterTree& tree, const std::vector<std::string>& doc_ids,
                  std::ostream& out) {
  for (int root : tree.roots) {
    write_node(tree, doc_ids, root, -1.0, out);
    out << ";\n";
  }
}

const char* linkage_name(Linkage l) {
  return l == Linkage::kProfile ? "profile" : "complete";
}

}  // namespace coword
