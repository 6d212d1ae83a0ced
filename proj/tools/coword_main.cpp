// coword command line: drives the shared-library pipeline stage by stage.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 internal failure.
// Diagnostics go to stderr; artifacts go to the configured output directory.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coword.h"

namespace {

struct SessionDeleter {
  void operator()(coword_session* s) const { coword_session_close(s); }
};
using SessionPtr = std::unique_ptr<coword_session, SessionDeleter>;

int report(const char* stage, coword_error* err) {
  int status = coword_error_status(err);
  std::fprintf(stderr, "coword %s: [%s] %s\n", stage, coword_error_name(err),
               coword_error_message(err));
  coword_error_free(err);
  return status;
}

SessionPtr open_session(const std::string& config_path, int threads, int k_override,
                        int& status) {
  coword_error* err = nullptr;
  coword_session* raw = nullptr;
  if (coword_session_open(config_path.c_str(), &raw, &err) != COWORD_OK) {
    status = report("config", err);
    return nullptr;
  }
  SessionPtr session(raw);
  if (coword_session_set_threads(session.get(), threads, &err) != COWORD_OK) {
    status = report("config", err);
    return nullptr;
  }
  if (k_override > 0) {
    int ks[1] = {k_override};
    if (coword_session_set_cuts(session.get(), ks, 1, &err) != COWORD_OK) {
      status = report("config", err);
      return nullptr;
    }
  }
  status = 0;
  return session;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coword — co-word topic clustering toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(coword_version()));

  std::string config_path;
  int threads = 1;
  int k_override = 0;
  app.add_option("-c,--config", config_path, "pipeline config file")->required();
  app.add_option("--threads", threads, "worker threads for stage-internal parallelism")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "run the full pipeline and write a manifest");
  auto* ingest = app.add_subcommand("ingest", "validate and normalize the input corpus");
  auto* extract = app.add_subcommand("extract", "build vocabulary and term vectors");
  auto* similarity = app.add_subcommand("similarity", "export the document similarity matrix");
  auto* cluster = app.add_subcommand("cluster", "build the multi-stage cluster tree");
  auto* cut = app.add_subcommand("cut", "cut the tree into K topics");
  auto* label = app.add_subcommand("label", "label cut topics with their co-words");
  auto* trends = app.add_subcommand("trends", "aggregate yearly topic tables");
  auto* chart = app.add_subcommand("chart", "render line charts from trend tables");

  for (CLI::App* sub : {cut, label, trends, chart}) {
    sub->add_option("--k", k_override, "use a single cut size instead of the configured list")
        ->check(CLI::PositiveNumber);
  }

  std::string assignment_path;
  trends->add_option("--assignment", assignment_path,
                     "aggregate an explicit assignment artifact instead of the label output");

  std::string table_path, chart_mode = "counts", chart_out;
  chart->add_option("--table", table_path, "render an explicit trends CSV");
  chart->add_option("--mode", chart_mode, "counts or percent")
      ->check(CLI::IsMember({"counts", "percent"}));
  chart->add_option("--out", chart_out, "output SVG path (required with --table)");

  CLI11_PARSE(app, argc, argv);

  int status = 0;
  SessionPtr session = open_session(config_path, threads, k_override, status);
  if (!session) return status;

  coword_error* err = nullptr;

  if (run->parsed()) {
    if (coword_run(session.get(), &err) != COWORD_OK) return report("run", err);
    return 0;
  }
  if (trends->parsed() && !assignment_path.empty()) {
    if (coword_trends_from_assignment(session.get(), assignment_path.c_str(), &err) != COWORD_OK) {
      return report("trends", err);
    }
    return 0;
  }
  if (chart->parsed() && !table_path.empty()) {
    if (chart_out.empty()) {
      std::fprintf(stderr, "coword chart: [CONFIG_ERROR] --table requires --out\n");
      return 2;
    }
    if (coword_chart_from_table(session.get(), table_path.c_str(), chart_mode.c_str(),
                                chart_out.c_str(), &err) != COWORD_OK) {
      return report("chart", err);
    }
    return 0;
  }

  const char* stage = nullptr;
  if (ingest->parsed()) stage = "ingest";
  else if (extract->parsed()) stage = "extract";
  else if (similarity->parsed()) stage = "similarity";
  else if (cluster->parsed()) stage = "cluster";
  else if (cut->parsed()) stage = "cut";
  else if (label->parsed()) stage = "label";
  else if (trends->parsed()) stage = "trends";
  else if (chart->parsed()) stage = "chart";

  if (!stage) {
    std::fprintf(stderr, "coword: no subcommand selected\n");
    return 2;
  }
  if (coword_run_stage(session.get(), stage, &err) != COWORD_OK) return report(stage, err);
  return 0;
}
