#ifndef COWORD_ARTIFACTS_HPP
#define COWORD_ARTIFACTS_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coword/cluster.hpp"
#include "coword/lexer.hpp"
#include "coword/topics.hpp"

namespace coword::artifacts {

// Stage artifacts embed a schema tag and the digest of the producing
// configuration so mismatched pipelines fail loudly. Externally supplied
// artifacts (digest unknown) are accepted only where a command takes an
// explicit file argument.
inline constexpr const char* kVocabularySchema = "coword.vocabulary/1";
inline constexpr const char* kVectorsSchema = "coword.vectors/1";
inline constexpr const char* kTreeSchema = "coword.tree/1";
inline constexpr const char* kCutSchema = "coword.cut/1";
inline constexpr const char* kTopicsSchema = "coword.topics/1";
inline constexpr const char* kManifestSchema = "coword.manifest/1";

struct VectorSet {
  Vocabulary vocabulary;
  std::vector<TermVector> vectors;  // corpus order
};

nlohmann::json vocabulary_to_json(const Vocabulary& vocabulary, const std::string& config_digest);

nlohmann::json vectors_to_json(const VectorSet& set, const std::string& config_digest);
VectorSet vectors_from_json(const nlohmann::json& j, const std::string& source_name);

nlohmann::json tree_to_json(const ClusterTree& tree, const std::vector<std::string>& doc_ids,
                            const std::string& config_digest);
// Returns the tree plus the leaf doc-id order it was built over.
std::pair<ClusterTree, std::vector<std::string>> tree_from_json(const nlohmann::json& j,
                                                                const std::string& source_name);

nlohmann::json cut_to_json(const CutResult& cut, const std::vector<std::string>& doc_ids,
                           const std::string& config_digest);

nlohmann::json assignment_to_json(const TopicAssignment& assignment,
                                  const std::string& config_digest);
TopicAssignment assignment_from_json(const nlohmann::json& j, const std::string& source_name);

// Accepts a cut artifact or a topic report; both describe a partition.
TopicAssignment assignment_from_cut_or_topics(const nlohmann::json& j,
                                              const std::string& source_name);

// Validates schema/digest on a loaded artifact. An empty expected digest or
// `check_digest = false` skips the configuration comparison.
void check_artifact(const nlohmann::json& j, const char* schema,
                    const std::string& expected_digest, bool check_digest,
                    const std::string& source_name);

nlohmann::json load_json_file(const std::string& path);

}  // namespace coword::artifacts

#endif  // COWORD_ARTIFACTS_HPP
