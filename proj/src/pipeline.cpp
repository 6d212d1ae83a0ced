#include "coword/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coword/artifacts.hpp"
#include "coword/corpus.hpp"
#include "coword/digest.hpp"
#include "coword/error.hpp"
#include "coword/trends.hpp"

namespace coword {

namespace fs = std::filesystem;
using nlohmann::json;

namespace stage_files {
std::string cut(int k) { return "cut_k" + std::to_string(k) + ".json"; }
std::string topics(int k) { return "topics_k" + std::to_string(k) + ".json"; }
std::string trends_counts(int k) { return "trends_k" + std::to_string(k) + "_counts.csv"; }
std::string trends_percent(int k) { return "trends_k" + std::to_string(k) + "_percent.csv"; }
std::string chart_counts(int k) { return "chart_k" + std::to_string(k) + "_counts.svg"; }
std::string chart_percent(int k) { return "chart_k" + std::to_string(k) + "_percent.svg"; }
}  // namespace stage_files

// Files created by one invocation, removed again if it fails partway.
struct Pipeline::Run {
  std::vector<std::string> written;

  void record(const std::string& path) { written.push_back(path); }

  void discard_outputs() {
    for (const std::string& path : written) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    written.clear();
  }
};

namespace {

void log_line(const std::string& msg) { std::cerr << "coword: " << msg << "\n"; }

void write_file(Pipeline::Run& run, const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
    out << content;
    if (!out) throw Error(ErrorCode::kIoError, "write failed: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move " + tmp + " into place");
  }
  run.record(path);
}
}  // namespace

Pipeline::Pipeline(PipelineConfig config)
    : config_(std::move(config)), digest_(config_.digest()) {}

void Pipeline::set_threads(int threads) {
  if (threads < 1) throw Error(ErrorCode::kBadConfig, "thread count must be >= 1");
  threads_ = threads;
}

void Pipeline::set_cuts(std::vector<int> cuts) {
  if (cuts.empty()) throw Error(ErrorCode::kBadConfig, "cut list must not be empty");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < 1 || (i > 0 && cuts[i] <= cuts[i - 1])) {
      throw Error(ErrorCode::kBadConfig, "cut list must be positive and strictly ascending");
    }
  }
  config_.cuts = std::move(cuts);
}

const std::vector<std::string>& Pipeline::stage_names() {
  static const std::vector<std::string> kNames = {
      "ingest", "extract", "similarity", "cluster", "cut", "label", "trends", "chart"};
  return kNames;
}

std::string Pipeline::out_path(const std::string& name) const {
  return (fs::path(config_.output_dir) / name).string();
}

void Pipeline::run_stage(const std::string& name) {
  fs::create_directories(config_.output_dir);
  Run run;
  try {
    if (name == "ingest") do_ingest(run);
    else if (name == "extract") do_extract(run);
    else if (name == "similarity") do_similarity(run);
    else if (name == "cluster") do_cluster(run);
    else if (name == "cut") do_cut(run);
    else if (name == "label") do_label(run);
    else if (name == "trends") do_trends(run);
    else if (name == "chart") do_charts(run);
    else throw Error(ErrorCode::kConfigError, "unknown stage '" + name + "'");
  } catch (...) {
    run.discard_outputs();
    throw;
  }
}

void Pipeline::run_all() {
  fs::create_directories(config_.output_dir);
  Run run;
  try {
    do_ingest(run);
    do_extract(run);
    do_cluster(run);
    do_cut(run);
    do_label(run);
    do_trends(run);
    do_charts(run);
    write_manifest(run);
  } catch (...) {
    run.discard_outputs();
    throw;
  }
}

void Pipeline::do_ingest(Run& run) {
  Corpus corpus = ingest_records(config_.input_path, config_.input_format);
  std::ostringstream out;
  emit_jsonl(corpus, out);
  write_file(run, out_path(stage_files::kCorpus), out.str());

  CorpusSummary s = corpus_summary(corpus);
  std::ostringstream msg;
  msg << "ingest: " << s.document_count << " records";
  if (s.document_count > 0) msg << ", years " << s.min_year << "-" << s.max_year;
  log_line(msg.str());
}

void Pipeline::do_extract(Run& run) {
  Corpus corpus = ingest_records(out_path(stage_files::kCorpus), CorpusFormat::kJsonl);
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus is empty; nothing to extract");
  }

  std::vector<TermMultiset> multisets;
  multisets.reserve(corpus.size());
  for (const BibRecord& r : corpus.records()) {
    TermMultiset pooled = extract_terms(tokenize(r.title), config_.lexer);
    for (auto& [term, count] : extract_terms(tokenize(r.abstract), config_.lexer)) {
      pooled[term] += count;
    }
    multisets.push_back(std::move(pooled));
  }
  Vocabulary vocabulary = build_vocabulary(multisets, config_.lexer.min_df);

  artifacts::VectorSet set;
  set.vocabulary = vocabulary;
  set.vectors.reserve(corpus.size());
  std::size_t empty_count = 0;
  for (const BibRecord& r : corpus.records()) {
    TermVector v = vectorize(r, vocabulary, config_.lexer);
    if (v.empty()) ++empty_count;
    set.vectors.push_back(std::move(v));
  }

  write_file(run, out_path(stage_files::kVocabulary),
             artifacts::vocabulary_to_json(vocabulary, digest_).dump(2) + "\n");
  write_file(run, out_path(stage_files::kVectors),
             artifacts::vectors_to_json(set, digest_).dump(2) + "\n");

  std::ostringstream msg;
  msg << "extract: " << vocabulary.size() << " vocabulary terms over " << corpus.size()
      << " documents";
  if (empty_count > 0) msg << "; " << empty_count << " documents have empty term vectors";
  log_line(msg.str());
}

namespace {

artifacts::VectorSet load_vectors(const std::string& path, const std::string& digest) {
  json j = artifacts::load_json_file(path);
  artifacts::check_artifact(j, artifacts::kVectorsSchema, digest, true, path);
  return artifacts::vectors_from_json(j, path);
}

}  // namespace

void Pipeline::do_similarity(Run& run) {
  artifacts::VectorSet set = load_vectors(out_path(stage_files::kVectors), digest_);
  std::vector<WeightedVector> weighted;
  std::vector<std::string> ids;
  weighted.reserve(set.vectors.size());
  ids.reserve(set.vectors.size());
  for (const TermVector& v : set.vectors) {
    weighted.push_back(apply_weighting(v, set.vocabulary, config_.weighting));
    ids.push_back(v.doc_id);
  }
  SimilarityMatrix m =
      build_similarity_matrix(weighted, ids, config_.measure, config_.epsilon, threads_);
  std::ostringstream out;
  write_matrix_csv(m, out);
  write_file(run, out_path(stage_files::kSimMatrix), out.str());
  log_line("similarity: " + std::to_string(m.stored_count()) + " stored pairs over " +
           std::to_string(m.size()) + " documents");
}

void Pipeline::do_cluster(Run& run) {
  artifacts::VectorSet set = load_vectors(out_path(stage_files::kVectors), digest_);
  std::vector<std::string> ids;
  ids.reserve(set.vectors.size());
  for (const TermVector& v : set.vectors) ids.push_back(v.doc_id);

  ClusterTree tree = run_multistage(set.vectors, set.vocabulary, config_.weighting,
                                    config_.measure, config_.linkage, config_.stages, threads_);

  write_file(run, out_path(stage_files::kTree),
             artifacts::tree_to_json(tree, ids, digest_).dump(2) + "\n");
  std::ostringstream nwk;
  write_newick(tree, ids, nwk);
  write_file(run, out_path(stage_files::kNewick), nwk.str());

  std::ostringstream msg;
  msg << "cluster: " << tree.roots.size() << " roots after " << tree.stage_thresholds.size()
      << " stages";
  if (!tree.excluded_docs.empty()) {
    msg << "; " << tree.excluded_docs.size() << " empty-vector documents kept as singletons:";
    for (int pos : tree.excluded_docs) msg << " " << ids[static_cast<std::size_t>(pos)];
  }
  log_line(msg.str());
}

void Pipeline::do_cut(Run& run) {
  json j = artifacts::load_json_file(out_path(stage_files::kTree));
  artifacts::check_artifact(j, artifacts::kTreeSchema, digest_, true, out_path(stage_files::kTree));
  auto [tree, ids] = artifacts::tree_from_json(j, out_path(stage_files::kTree));

  for (int k : config_.cuts) {
    CutResult cut = cut_tree(tree, k, ids);
    write_file(run, out_path(stage_files::cut(k)),
               artifacts::cut_to_json(cut, ids, digest_).dump(2) + "\n");
    log_line("cut: K=" + std::to_string(k) + " produced " + std::to_string(cut.topics.size()) +
             " topics");
  }
}

void Pipeline::do_label(Run& run) {
  artifacts::VectorSet set = load_vectors(out_path(stage_files::kVectors), digest_);
  std::vector<std::string> ids;
  ids.reserve(set.vectors.size());
  for (const TermVector& v : set.vectors) ids.push_back(v.doc_id);
  std::map<std::string, int> position;
  for (std::size_t i = 0; i < ids.size(); ++i) position[ids[i]] = static_cast<int>(i);

  for (int k : config_.cuts) {
    std::string cut_path = out_path(stage_files::cut(k));
    json j = artifacts::load_json_file(cut_path);
    artifacts::check_artifact(j, artifacts::kCutSchema, digest_, true, cut_path);

    CutResult cut;
    cut.k_requested = j.value("k_requested", k);
    for (const json& t : j.at("topics")) {
      CutTopic topic;
      topic.topic_id = t.at("topic_id").get<int>();
      topic.node_id = t.value("node_id", -1);
      for (const json& doc : t.at("members")) {
        auto it = position.find(doc.get<std::string>());
        if (it == position.end()) {
          throw Error(ErrorCode::kUnknownDoc,
                      cut_path + ": document '" + doc.get<std::string>() +
                          "' is not in the vector set");
        }
        topic.members.push_back(it->second);
      }
      std::sort(topic.members.begin(), topic.members.end());
      cut.topics.push_back(std::move(topic));
    }

    std::vector<TopicLabel> labels;
    labels.reserve(cut.topics.size());
    for (const CutTopic& t : cut.topics) {
      TopicLabel label = label_cluster(t.members, set.vectors, set.vocabulary, config_.label_k);
      label.topic_id = t.topic_id;
      labels.push_back(std::move(label));
    }
    TopicAssignment assignment = build_assignment(cut, labels, ids);
    write_file(run, out_path(stage_files::topics(k)),
               artifacts::assignment_to_json(assignment, digest_).dump(2) + "\n");
    log_line("label: K=" + std::to_string(k) + " topic report written");
  }
}

namespace {

void write_trend_pair(Pipeline::Run& run, const TopicAssignment& assignment,
                      const Corpus& corpus, int k, const std::string& counts_path,
                      const std::string& percent_path) {
  TrendTable table = yearly_counts(assignment, corpus);
  std::ostringstream counts_out;
  write_trend_csv(table, counts_out);
  write_file(run, counts_path, counts_out.str());

  PercentTable pct = yearly_percentages(table);
  std::ostringstream pct_out;
  write_percent_csv(pct, pct_out);
  write_file(run, percent_path, pct_out.str());

  log_line("trends: K=" + std::to_string(k) + " tables cover " +
           std::to_string(table.years.size()) + " years, " +
           std::to_string(table.grand_total) + " assigned documents");
}

}  // namespace

void Pipeline::do_trends(Run& run) {
  Corpus corpus = ingest_records(out_path(stage_files::kCorpus), CorpusFormat::kJsonl);
  for (int k : config_.cuts) {
    std::string topics_path = out_path(stage_files::topics(k));
    json j = artifacts::load_json_file(topics_path);
    artifacts::check_artifact(j, artifacts::kTopicsSchema, digest_, true, topics_path);
    TopicAssignment assignment = artifacts::assignment_from_json(j, topics_path);
    write_trend_pair(run, assignment, corpus, k, out_path(stage_files::trends_counts(k)),
                     out_path(stage_files::trends_percent(k)));
  }
}

void Pipeline::trends_from_assignment(const std::string& assignment_path) {
  fs::create_directories(config_.output_dir);
  Run run;
  try {
    Corpus corpus = ingest_records(out_path(stage_files::kCorpus), CorpusFormat::kJsonl);
    json j = artifacts::load_json_file(assignment_path);
    TopicAssignment assignment = artifacts::assignment_from_cut_or_topics(j, assignment_path);
    int k = static_cast<int>(assignment.topics.size());
    write_trend_pair(run, assignment, corpus, k, out_path(stage_files::trends_counts(k)),
                     out_path(stage_files::trends_percent(k)));
  } catch (...) {
    run.discard_outputs();
    throw;
  }
}

void Pipeline::do_charts(Run& run) {
  for (int k : config_.cuts) {
    for (ChartMode mode : {ChartMode::kCounts, ChartMode::kPercent}) {
      std::string table_path = out_path(mode == ChartMode::kCounts
                                            ? stage_files::trends_counts(k)
                                            : stage_files::trends_percent(k));
      std::ifstream in(table_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIoError, "cannot open trends table: " + table_path);
      ChartTable table = read_table_csv(in, table_path);
      std::string svg = render_line_chart(table, mode, config_.chart);
      std::string out = out_path(mode == ChartMode::kCounts ? stage_files::chart_counts(k)
                                                            : stage_files::chart_percent(k));
      write_file(run, out, svg);
    }
    log_line("chart: K=" + std::to_string(k) + " charts rendered");
  }
}

void Pipeline::chart_from_table(const std::string& table_csv_path, ChartMode mode,
                                const std::string& out_svg_path) {
  Run run;
  try {
    std::ifstream in(table_csv_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open trends table: " + table_csv_path);
    ChartTable table = read_table_csv(in, table_csv_path);
    std::string svg = render_line_chart(table, mode, config_.chart);
    fs::path out(out_svg_path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_file(run, out_svg_path, svg);
  } catch (...) {
    run.discard_outputs();
    throw;
  }
}

void Pipeline::write_manifest(Run& run) {
  std::vector<std::string> paths = run.written;
  std::sort(paths.begin(), paths.end());

  json files = json::array();
  for (const std::string& path : paths) {
    fs::path rel = fs::path(path).lexically_relative(config_.output_dir);
    files.push_back({{"path", rel.generic_string()},
                     {"sha256", sha256_file_hex(path)},
                     {"bytes", fs::file_size(path)}});
  }
  json manifest{{"schema", artifacts::kManifestSchema},
                {"config_digest", digest_},
                {"files", std::move(files)}};
  write_file(run, out_path(stage_files::kManifest), manifest.dump(2) + "\n");
  log_line("run: manifest lists " + std::to_string(paths.size()) + " files");
}

ChartMode parse_chart_mode(const std::string& name) {
  if (name == "counts") return ChartMode::kCounts;
  if (name == "percent") return ChartMode::kPercent;
  throw Error(ErrorCode::kConfigError, "chart mode must be counts or percent, got '" + name + "'");
}

}  // namespace coword
