#ifndef COWORD_CONFIG_HPP
#define COWORD_CONFIG_HPP

#include <string>
#include <vector>

#include "coword/chart.hpp"
#include "coword/cluster.hpp"
#include "coword/corpus.hpp"
#include "coword/lexer.hpp"
#include "coword/similarity.hpp"

namespace coword {

// Resolved pipeline configuration. Relative paths in the config file are
// interpreted against the config file's directory.
struct PipelineConfig {
  std::string input_path;
  CorpusFormat input_format = CorpusFormat::kCsv;

  LexerConfig lexer;                // stopwords already loaded
  std::string stopword_path;        // empty when unset
  std::string stopword_digest;      // sha256 of the stopword file content

  WeightingScheme weighting = WeightingScheme::kRaw;
  SimilarityMeasure measure = SimilarityMeasure::kJaccardSet;
  double epsilon = 0.0;

  StageConfig stages;
  Linkage linkage = Linkage::kProfile;

  std::vector<int> cuts = {3, 7};  // positive, strictly ascending
  int label_k = 5;

  ChartStyle chart;

  std::string output_dir;

  // Digest over the analysis parameters (not input/output locations), used
  // to detect stage artifacts produced under a different configuration.
  std::string digest() const;
};

// Parses the line-oriented `key = value` format with [section] headers and
// full-line '#' comments. Unknown sections or keys are errors, as are
// missing referenced files.
PipelineConfig load_config(const std::string& path);

// Same parser over an already-read string; `base_dir` anchors relative paths.
PipelineConfig parse_config(const std::string& content, const std::string& base_dir,
                            const std::string& source_name);

}  // namespace coword

#endif  // COWORD_CONFIG_HPP
