#ifndef COWORD_PIPELINE_HPP
#define COWORD_PIPELINE_HPP

#include <string>
#include <vector>

#include "coword/chart.hpp"
#include "coword/config.hpp"

namespace coword {

// Fixed artifact names inside the output directory.
namespace stage_files {
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kVocabulary = "vocabulary.json";
inline constexpr const char* kVectors = "vectors.json";
inline constexpr const char* kSimMatrix = "simmatrix.csv";
inline constexpr const char* kTree = "tree.json";
inline constexpr const char* kNewick = "tree.newick";
inline constexpr const char* kManifest = "manifest.json";
std::string cut(int k);
std::string topics(int k);
std::string trends_counts(int k);
std::string trends_percent(int k);
std::string chart_counts(int k);
std::string chart_percent(int k);
}  // namespace stage_files

// Drives the stages over the filesystem. Each stage consumes the previous
// stage's artifact from the output directory and writes its own; `run_all`
// chains every stage and finishes with a checksum manifest. Files written
// by a failing invocation are removed.
class Pipeline {
 public:
  struct Run;  // tracks files written by one invocation for cleanup

  explicit Pipeline(PipelineConfig config);

  const PipelineConfig& config() const { return config_; }
  void set_threads(int threads);
  void set_cuts(std::vector<int> cuts);  // overrides the configured K list

  static const std::vector<std::string>& stage_names();

  void run_stage(const std::string& name);
  void run_all();

  // `trends` over an explicitly supplied assignment artifact (its config
  // digest is not checked). Writes the standard per-K trend CSVs.
  void trends_from_assignment(const std::string& assignment_path);

  // Renders one chart from an explicit trends CSV.
  void chart_from_table(const std::string& table_csv_path, ChartMode mode,
                        const std::string& out_svg_path);

 private:
  void do_ingest(Run& run);
  void do_extract(Run& run);
  void do_similarity(Run& run);
  void do_cluster(Run& run);
  void do_cut(Run& run);
  void do_label(Run& run);
  void do_trends(Run& run);
  void do_charts(Run& run);
  void write_manifest(Run& run);

  std::string out_path(const std::string& name) const;

  PipelineConfig config_;
  std::string digest_;
  int threads_ = 1;
};

ChartMode parse_chart_mode(const std::string& name);

}  // namespace coword

#endif  // COWORD_PIPELINE_HPP
