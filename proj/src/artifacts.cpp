#include "coword/artifacts.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "coword/error.hpp"

namespace coword::artifacts {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& source, const std::string& msg) {
  throw Error(ErrorCode::kStageMismatch, source + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& source) {
  auto it = j.find(key);
  if (it == j.end()) malformed(source, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

void check_artifact(const json& j, const char* schema, const std::string& expected_digest,
                    bool check_digest, const std::string& source_name) {
  if (!j.is_object()) malformed(source_name, "artifact is not a JSON object");
  const json& s = require(j, "schema", source_name);
  if (!s.is_string() || s.get<std::string>() != schema) {
    malformed(source_name, "expected schema " + std::string(schema) + ", found " + s.dump());
  }
  if (check_digest && !expected_digest.empty()) {
    const json& d = require(j, "config_digest", source_name);
    if (!d.is_string() || d.get<std::string>() != expected_digest) {
      malformed(source_name,
                "artifact was produced under a different configuration; rerun earlier stages");
    }
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open artifact: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kStageMismatch, path + ": invalid JSON artifact: " + e.what());
  }
}

json vocabulary_to_json(const Vocabulary& vocabulary, const std::string& config_digest) {
  json terms = json::array();
  for (std::size_t id = 0; id < vocabulary.size(); ++id) {
    auto tid = static_cast<TermId>(id);
    terms.push_back({{"term", vocabulary.term(tid)},
                     {"id", id},
                     {"df", vocabulary.df(tid)},
                     {"cf", vocabulary.cf(tid)}});
  }
  return json{{"schema", kVocabularySchema},
              {"config_digest", config_digest},
              {"n_docs", vocabulary.n_docs()},
              {"min_df", vocabulary.min_df()},
              {"terms", std::move(terms)}};
}

json vectors_to_json(const VectorSet& set, const std::string& config_digest) {
  json terms = json::array();
  for (std::size_t id = 0; id < set.vocabulary.size(); ++id) {
    auto tid = static_cast<TermId>(id);
    terms.push_back(json::array(
        {set.vocabulary.term(tid), set.vocabulary.df(tid), set.vocabulary.cf(tid)}));
  }
  json vectors = json::array();
  for (const TermVector& v : set.vectors) {
    json counts = json::array();
    for (const auto& [id, count] : v.counts) counts.push_back(json::array({id, count}));
    vectors.push_back({{"doc", v.doc_id}, {"counts", std::move(counts)}});
  }
  return json{{"schema", kVectorsSchema},
              {"config_digest", config_digest},
              {"vocabulary",
               {{"n_docs", set.vocabulary.n_docs()},
                {"min_df", set.vocabulary.min_df()},
                {"terms", std::move(terms)}}},
              {"vectors", std::move(vectors)}};
}

VectorSet vectors_from_json(const json& j, const std::string& source_name) {
  VectorSet set;
  const json& vocab = require(j, "vocabulary", source_name);
  const json& terms = require(vocab, "terms", source_name);
  if (!terms.is_array()) malformed(source_name, "vocabulary.terms must be an array");

  std::map<std::string, TermStats> stats;
  TermId next = 0;
  for (const json& t : terms) {
    if (!t.is_array() || t.size() != 3) malformed(source_name, "bad vocabulary term entry");
    TermStats s;
    s.id = next++;
    s.df = t[1].get<std::int64_t>();
    s.cf = t[2].get<std::int64_t>();
    auto [it, inserted] = stats.emplace(t[0].get<std::string>(), s);
    if (!inserted) malformed(source_name, "duplicate vocabulary term");
  }
  // Lexicographic id order is part of the schema.
  TermId expect = 0;
  for (const auto& [term, s] : stats) {
    if (s.id != expect++) malformed(source_name, "vocabulary terms are not in id order");
  }
  set.vocabulary = Vocabulary(std::move(stats), require(vocab, "n_docs", source_name).get<std::int64_t>(),
                              require(vocab, "min_df", source_name).get<std::int64_t>());

  const json& vectors = require(j, "vectors", source_name);
  if (!vectors.is_array()) malformed(source_name, "vectors must be an array");
  for (const json& v : vectors) {
    TermVector tv;
    tv.doc_id = require(v, "doc", source_name).get<std::string>();
    for (const json& c : require(v, "counts", source_name)) {
      if (!c.is_array() || c.size() != 2) malformed(source_name, "bad count entry");
      tv.counts.emplace_back(c[0].get<TermId>(), c[1].get<std::int64_t>());
    }
    if (!std::is_sorted(tv.counts.begin(), tv.counts.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
      malformed(source_name, "vector counts are not sorted by term id");
    }
    set.vectors.push_back(std::move(tv));
  }
  return set;
}

json tree_to_json(const ClusterTree& tree, const std::vector<std::string>& doc_ids,
                  const std::string& config_digest) {
  json nodes = json::array();
  for (const ClusterNode& n : tree.nodes) {
    json members = json::array();
    std::vector<std::string> ids;
    ids.reserve(n.members.size());
    for (int pos : n.members) ids.push_back(doc_ids.at(static_cast<std::size_t>(pos)));
    std::sort(ids.begin(), ids.end());
    for (auto& id : ids) members.push_back(std::move(id));
    nodes.push_back({{"id", n.id},
                     {"children", n.children},
                     {"members", std::move(members)},
                     {"similarity", n.similarity},
                     {"stage", n.stage}});
  }
  json excluded = json::array();
  for (int pos : tree.excluded_docs) {
    excluded.push_back(doc_ids.at(static_cast<std::size_t>(pos)));
  }
  return json{{"schema", kTreeSchema},
              {"config_digest", config_digest},
              {"n_docs", tree.n_docs},
              {"doc_order", doc_ids},
              {"stage_thresholds", tree.stage_thresholds},
              {"roots", tree.roots},
              {"excluded_docs", std::move(excluded)},
              {"nodes", std::move(nodes)}};
}

std::pair<ClusterTree, std::vector<std::string>> tree_from_json(const json& j,
                                                                const std::string& source_name) {
  ClusterTree tree;
  std::vector<std::string> doc_ids =
      require(j, "doc_order", source_name).get<std::vector<std::string>>();
  tree.n_docs = doc_ids.size();
  tree.stage_thresholds =
      require(j, "stage_thresholds", source_name).get<std::vector<double>>();
  tree.roots = require(j, "roots", source_name).get<std::vector<int>>();

  const json& nodes = require(j, "nodes", source_name);
  if (!nodes.is_array()) malformed(source_name, "nodes must be an array");
  tree.nodes.resize(nodes.size());
  for (const json& n : nodes) {
    int id = require(n, "id", source_name).get<int>();
    if (id < 0 || static_cast<std::size_t>(id) >= tree.nodes.size()) {
      malformed(source_name, "node id out of range");
    }
    ClusterNode& node = tree.nodes[static_cast<std::size_t>(id)];
    node.id = id;
    node.children = require(n, "children", source_name).get<std::vector<int>>();
    node.similarity = require(n, "similarity", source_name).get<double>();
    node.stage = require(n, "stage", source_name).get<int>();
  }

  // Rebuild position-based member lists: leaves are ids 0..n_docs-1 in
  // doc_order; internal members are the union of their children's.
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    ClusterNode& node = tree.nodes[id];
    if (node.is_leaf()) {
      if (id >= tree.n_docs) malformed(source_name, "leaf id beyond doc_order");
      node.members = {static_cast<int>(id)};
      continue;
    }
    std::vector<int> members;
    for (int c : node.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= id) {
        malformed(source_name, "child id must precede its parent");
      }
      const auto& cm = tree.nodes[static_cast<std::size_t>(c)].members;
      members.insert(members.end(), cm.begin(), cm.end());
    }
    std::sort(members.begin(), members.end());
    node.members = std::move(members);
  }

  for (const json& doc : require(j, "excluded_docs", source_name)) {
    std::string id = doc.get<std::string>();
    auto it = std::find(doc_ids.begin(), doc_ids.end(), id);
    if (it == doc_ids.end()) malformed(source_name, "excluded doc not in doc_order");
    tree.excluded_docs.push_back(static_cast<int>(it - doc_ids.begin()));
  }
  return {std::move(tree), std::move(doc_ids)};
}

json cut_to_json(const CutResult& cut, const std::vector<std::string>& doc_ids,
                 const std::string& config_digest) {
  json topics = json::array();
  for (const CutTopic& t : cut.topics) {
    json members = json::array();
    for (int pos : t.members) members.push_back(doc_ids.at(static_cast<std::size_t>(pos)));
    topics.push_back({{"topic_id", t.topic_id},
                      {"node_id", t.node_id},
                      {"member_count", t.members.size()},
                      {"members", std::move(members)}});
  }
  return json{{"schema", kCutSchema},
              {"config_digest", config_digest},
              {"k_requested", cut.k_requested},
              {"k", cut.topics.size()},
              {"topics", std::move(topics)}};
}

json assignment_to_json(const TopicAssignment& assignment, const std::string& config_digest) {
  json topics = json::array();
  for (const AssignedTopic& t : assignment.topics) {
    json keywords = json::array();
    for (const TopicKeyword& kw : t.label.keywords) {
      keywords.push_back({{"term", kw.term}, {"score", kw.score}});
    }
    json entry = {{"topic_id", t.topic_id},
                  {"node_id", t.node_id},
                  {"member_count", t.members.size()},
                  {"keywords", std::move(keywords)},
                  {"members", t.members}};
    if (!t.display_label.empty()) entry["label"] = t.display_label;
    topics.push_back(std::move(entry));
  }
  return json{{"schema", kTopicsSchema},
              {"config_digest", config_digest},
              {"k_requested", assignment.k_requested},
              {"k", assignment.topics.size()},
              {"topics", std::move(topics)}};
}

namespace {

TopicAssignment assignment_from_json_impl(const json& j, const std::string& source_name) {
  TopicAssignment assignment;
  assignment.k_requested = j.value("k_requested", 0);

  const json& topics = require(j, "topics", source_name);
  if (!topics.is_array() || topics.empty()) {
    malformed(source_name, "assignment has no topics");
  }
  for (const json& t : topics) {
    AssignedTopic at;
    at.topic_id = require(t, "topic_id", source_name).get<int>();
    at.node_id = t.value("node_id", -1);
    at.members = require(t, "members", source_name).get<std::vector<std::string>>();
    if (at.members.empty()) malformed(source_name, "assignment topic with no members");
    if (t.contains("label")) at.display_label = t["label"].get<std::string>();
    if (t.contains("keywords")) {
      for (const json& kw : t["keywords"]) {
        at.label.keywords.push_back(
            {require(kw, "term", source_name).get<std::string>(), kw.value("score", 0.0)});
      }
    }
    at.label.topic_id = at.topic_id;
    at.label.member_count = at.members.size();
    for (const std::string& doc : at.members) {
      auto [it, inserted] = assignment.doc_topic.emplace(doc, at.topic_id);
      if (!inserted) malformed(source_name, "document '" + doc + "' appears in two topics");
    }
    assignment.topics.push_back(std::move(at));
  }
  std::sort(assignment.topics.begin(), assignment.topics.end(),
            [](const AssignedTopic& a, const AssignedTopic& b) { return a.topic_id < b.topic_id; });
  return assignment;
}

}  // namespace

TopicAssignment assignment_from_json(const json& j, const std::string& source_name) {
  return assignment_from_json_impl(j, source_name);
}

TopicAssignment assignment_from_cut_or_topics(const json& j, const std::string& source_name) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
    malformed(source_name, "artifact is missing its schema tag");
  }
  std::string schema = j["schema"].get<std::string>();
  if (schema != kTopicsSchema && schema != kCutSchema) {
    malformed(source_name,
              "expected a " + std::string(kTopicsSchema) + " or " + kCutSchema + " artifact, found " +
                  schema);
  }
  return assignment_from_json_impl(j, source_name);
}

}  // namespace coword::artifacts
