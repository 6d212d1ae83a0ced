#include "coword/topics.hpp"

#include <algorithm>
#include <cmath>

#include "coword/error.hpp"

namespace coword {

TopicLabel label_cluster(const std::vector<int>& members,
                         const std::vector<TermVector>& vectors,
                         const Vocabulary& vocabulary, int k) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyCluster, "cannot label an empty cluster");
  }
  if (k < 1) throw Error(ErrorCode::kBadConfig, "label size k must be >= 1");

  TopicLabel label;
  label.member_count = members.size();

  std::vector<TopicKeyword> candidates;
  if (members.size() == 1) {
    // Singleton: rank the document's own terms by frequency.
    const TermVector& v = vectors.at(static_cast<std::size_t>(members[0]));
    candidates.reserve(v.counts.size());
    for (const auto& [id, count] : v.counts) {
      candidates.push_back({vocabulary.term(id), static_cast<double>(count)});
    }
  } else {
    std::map<TermId, std::int64_t> cdf;  // member docs containing the term
    for (int pos : members) {
      for (const auto& [id, count] : vectors.at(static_cast<std::size_t>(pos)).counts) {
        (void)count;
        cdf[id] += 1;
      }
    }
    double n = static_cast<double>(vocabulary.n_docs());
    for (const auto& [id, docs] : cdf) {
      if (docs < 2) continue;  // not a co-word within this cluster
      double idf = std::log((n + 1.0) / (static_cast<double>(vocabulary.df(id)) + 1.0));
      candidates.push_back({vocabulary.term(id), static_cast<double>(docs) * idf});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const TopicKeyword& a, const TopicKeyword& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  if (candidates.size() > static_cast<std::size_t>(k)) {
    candidates.resize(static_cast<std::size_t>(k));
  }
  label.keywords = std::move(candidates);
  return label;
}

std::string TopicAssignment::topic_display(const AssignedTopic& t) {
  if (!t.display_label.empty()) return t.display_label;
  if (!t.label.keywords.empty()) {
    std::string joined;
    for (const TopicKeyword& kw : t.label.keywords) {
      if (!joined.empty()) joined += " ";
      joined += kw.term;
    }
    return joined;
  }
  return "topic " + std::to_string(t.topic_id);
}

TopicAssignment build_assignment(const CutResult& cut, const std::vector<TopicLabel>& labels,
                                 const std::vector<std::string>& doc_ids) {
  if (labels.size() != cut.topics.size()) {
    throw Error(ErrorCode::kInternal, "one label per topic required");
  }

  TopicAssignment assignment;
  assignment.k_requested = cut.k_requested;

  std::size_t previous_size = 0;
  bool first = true;
  for (std::size_t t = 0; t < cut.topics.size(); ++t) {
    const CutTopic& topic = cut.topics[t];
    if (topic.members.empty()) {
      throw Error(ErrorCode::kEmptyCluster,
                  "topic " + std::to_string(topic.topic_id) + " has no members");
    }
    if (!first && topic.members.size() > previous_size) {
      throw Error(ErrorCode::kInternal, "topics are not ordered by descending member count");
    }
    first = false;
    previous_size = topic.members.size();

    AssignedTopic at;
    at.topic_id = topic.topic_id;
    at.node_id = topic.node_id;
    at.label = labels[t];
    at.members.reserve(topic.members.size());
    for (int pos : topic.members) {
      const std::string& doc = doc_ids.at(static_cast<std::size_t>(pos));
      at.members.push_back(doc);
      auto [it, inserted] = assignment.doc_topic.emplace(doc, topic.topic_id);
      if (!inserted) {
        throw Error(ErrorCode::kInternal, "document '" + doc + "' assigned to two topics");
      }
    }
    assignment.topics.push_back(std::move(at));
  }

  for (const std::string& doc : doc_ids) {
    if (!assignment.doc_topic.count(doc)) {
      throw Error(ErrorCode::kCoverageGap, "document '" + doc + "' has no topic");
    }
  }
  return assignment;
}

}  // namespace coword
