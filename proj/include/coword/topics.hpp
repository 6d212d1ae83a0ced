#ifndef COWORD_TOPICS_HPP
#define COWORD_TOPICS_HPP

#include <map>
#include <string>
#include <vector>

#include "coword/cluster.hpp"
#include "coword/lexer.hpp"

namespace coword {

struct TopicKeyword {
  std::string term;
  double score = 0.0;

  bool operator==(const TopicKeyword&) const = default;
};

struct TopicLabel {
  int topic_id = 0;
  std::vector<TopicKeyword> keywords;  // scores nonincreasing, length <= k
  std::size_t member_count = 0;
};

// Ranks a cluster's co-words by cdf(term) * ln((N+1)/(df(term)+1)), where
// cdf counts member documents containing the term. Terms appearing in a
// single member are skipped unless the cluster itself is a singleton, which
// falls back to ranking the document's terms by frequency. Ties are broken
// lexicographically.
TopicLabel label_cluster(const std::vector<int>& members,
                         const std::vector<TermVector>& vectors,
                         const Vocabulary& vocabulary, int k);

struct AssignedTopic {
  int topic_id = 0;
  int node_id = 0;
  std::vector<std::string> members;  // doc ids
  TopicLabel label;
  std::string display_label;         // optional explicit name; derived when empty
};

// Bidirectional doc/topic maps; topics ordered by descending member count.
struct TopicAssignment {
  int k_requested = 0;
  std::vector<AssignedTopic> topics;          // ordered by topic_id
  std::map<std::string, int> doc_topic;       // doc id -> topic id

  // Explicit display label, else the label's keywords joined by spaces,
  // else "topic <id>".
  static std::string topic_display(const AssignedTopic& t);
};

// Validates coverage and packages a cut plus its labels. Throws
// COVERAGE_GAP naming the first unassigned document.
TopicAssignment build_assignment(const CutResult& cut, const std::vector<TopicLabel>& labels,
                                 const std::vector<std::string>& doc_ids);

}  // namespace coword

#endif  // COWORD_TOPICS_HPP
