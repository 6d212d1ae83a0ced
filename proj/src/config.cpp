#include "coword/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coword/digest.hpp"
#include "coword/error.hpp"
#include "coword/text.hpp"

namespace coword {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kConfigError, source + ":" + std::to_string(line) + ": " + msg);
}

long long parse_int(const std::string& v, const std::string& source, std::size_t line,
                    const std::string& key) {
  long long out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    fail(source, line, key + " must be an integer, got '" + v + "'");
  }
  return out;
}

double parse_double(const std::string& v, const std::string& source, std::size_t line,
                    const std::string& key) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(source, line, key + " must be a number, got '" + v + "'");
  }
}

std::string resolve_path(const std::string& value, const std::string& base_dir) {
  fs::path p(value);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::string format_double_key(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

PipelineConfig parse_config(const std::string& content, const std::string& base_dir,
                            const std::string& source_name) {
  PipelineConfig cfg;
  bool have_input_path = false, have_input_format = false, have_output_dir = false;

  std::istringstream in(content);
  std::string raw;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = text::trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(source_name, lineno, "unterminated section header");
      section = text::ascii_lower(text::trim(line.substr(1, line.size() - 2)));
      if (section != "input" && section != "lexer" && section != "similarity" &&
          section != "cluster" && section != "topics" && section != "chart" &&
          section != "output") {
        fail(source_name, lineno, "unknown section [" + section + "]");
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(source_name, lineno, "expected key = value");
    std::string key = text::ascii_lower(text::trim(line.substr(0, eq)));
    std::string value = text::trim(line.substr(eq + 1));
    if (key.empty()) fail(source_name, lineno, "empty key");
    if (section.empty()) fail(source_name, lineno, "key '" + key + "' outside any section");

    std::string qualified = section + "." + key;
    if (qualified == "input.path") {
      cfg.input_path = resolve_path(value, base_dir);
      have_input_path = true;
    } else if (qualified == "input.format") {
      std::string f = text::ascii_lower(value);
      if (f == "csv") cfg.input_format = CorpusFormat::kCsv;
      else if (f == "jsonl") cfg.input_format = CorpusFormat::kJsonl;
      else fail(source_name, lineno, "input.format must be csv or jsonl");
      have_input_format = true;
    } else if (qualified == "lexer.ngram_min") {
      cfg.lexer.ngram_min = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "lexer.ngram_max") {
      cfg.lexer.ngram_max = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "lexer.min_df") {
      cfg.lexer.min_df = parse_int(value, source_name, lineno, key);
    } else if (qualified == "lexer.title_weight") {
      cfg.lexer.title_weight = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "lexer.stopwords") {
      if (!value.empty()) cfg.stopword_path = resolve_path(value, base_dir);
    } else if (qualified == "similarity.weighting") {
      std::string w = text::ascii_lower(value);
      if (w == "raw") cfg.weighting = WeightingScheme::kRaw;
      else if (w == "tfidf") cfg.weighting = WeightingScheme::kTfidf;
      else fail(source_name, lineno, "similarity.weighting must be raw or tfidf");
    } else if (qualified == "similarity.measure") {
      std::string m = text::ascii_lower(value);
      if (m == "jaccard_set" || m == "jaccard") cfg.measure = SimilarityMeasure::kJaccardSet;
      else if (m == "jaccard_weighted") cfg.measure = SimilarityMeasure::kJaccardWeighted;
      else if (m == "cosine") cfg.measure = SimilarityMeasure::kCosine;
      else if (m == "euclidean") cfg.measure = SimilarityMeasure::kEuclidean;
      else {
        fail(source_name, lineno,
             "similarity.measure must be jaccard_set, jaccard_weighted, cosine or euclidean");
      }
    } else if (qualified == "similarity.epsilon") {
      cfg.epsilon = parse_double(value, source_name, lineno, key);
    } else if (qualified == "cluster.theta_initial") {
      cfg.stages.theta_initial = parse_double(value, source_name, lineno, key);
    } else if (qualified == "cluster.decay") {
      cfg.stages.decay = parse_double(value, source_name, lineno, key);
    } else if (qualified == "cluster.theta_min") {
      cfg.stages.theta_min = parse_double(value, source_name, lineno, key);
    } else if (qualified == "cluster.max_stages") {
      cfg.stages.max_stages = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "cluster.linkage") {
      std::string l = text::ascii_lower(value);
      if (l == "profile") cfg.linkage = Linkage::kProfile;
      else if (l == "complete") cfg.linkage = Linkage::kComplete;
      else fail(source_name, lineno, "cluster.linkage must be profile or complete");
    } else if (qualified == "topics.cuts") {
      cfg.cuts.clear();
      std::istringstream parts(value);
      std::string part;
      while (std::getline(parts, part, ',')) {
        std::string v = text::trim(part);
        if (v.empty()) fail(source_name, lineno, "topics.cuts has an empty entry");
        cfg.cuts.push_back(static_cast<int>(parse_int(v, source_name, lineno, key)));
      }
      if (cfg.cuts.empty()) fail(source_name, lineno, "topics.cuts must list at least one K");
    } else if (qualified == "topics.label_k") {
      cfg.label_k = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "chart.width") {
      cfg.chart.width = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "chart.height") {
      cfg.chart.height = static_cast<int>(parse_int(value, source_name, lineno, key));
    } else if (qualified == "output.dir") {
      cfg.output_dir = resolve_path(value, base_dir);
      have_output_dir = true;
    } else {
      fail(source_name, lineno, "unknown key '" + qualified + "'");
    }
  }

  if (!have_input_path) throw Error(ErrorCode::kConfigError, source_name + ": input.path is required");
  if (!have_input_format) throw Error(ErrorCode::kConfigError, source_name + ": input.format is required");
  if (!have_output_dir) throw Error(ErrorCode::kConfigError, source_name + ": output.dir is required");

  // Parameter ranges.
  if (cfg.lexer.ngram_min < 2 || cfg.lexer.ngram_max < cfg.lexer.ngram_min) {
    throw Error(ErrorCode::kBadConfig,
                source_name + ": lexer ngram bounds must satisfy 2 <= ngram_min <= ngram_max");
  }
  if (cfg.lexer.min_df < 1) {
    throw Error(ErrorCode::kBadConfig, source_name + ": lexer.min_df must be >= 1");
  }
  if (cfg.lexer.title_weight < 0) {
    throw Error(ErrorCode::kBadConfig, source_name + ": lexer.title_weight must be >= 0");
  }
  if (cfg.epsilon < 0.0 || cfg.epsilon >= 1.0) {
    throw Error(ErrorCode::kBadConfig, source_name + ": similarity.epsilon must be in [0, 1)");
  }
  if (!(cfg.stages.theta_min > 0.0) || cfg.stages.theta_min > cfg.stages.theta_initial ||
      cfg.stages.theta_initial > 1.0) {
    throw Error(ErrorCode::kBadConfig,
                source_name + ": cluster thresholds must satisfy 0 < theta_min <= theta_initial <= 1");
  }
  if (!(cfg.stages.decay > 0.0) || !(cfg.stages.decay < 1.0)) {
    throw Error(ErrorCode::kBadConfig, source_name + ": cluster.decay must be in (0, 1)");
  }
  if (cfg.stages.max_stages < 1) {
    throw Error(ErrorCode::kBadConfig, source_name + ": cluster.max_stages must be >= 1");
  }
  for (std::size_t i = 0; i < cfg.cuts.size(); ++i) {
    if (cfg.cuts[i] < 1 || (i > 0 && cfg.cuts[i] <= cfg.cuts[i - 1])) {
      throw Error(ErrorCode::kBadConfig,
                  source_name + ": topics.cuts must be positive and strictly ascending");
    }
  }
  if (cfg.label_k < 1) {
    throw Error(ErrorCode::kBadConfig, source_name + ": topics.label_k must be >= 1");
  }
  if (cfg.chart.width < 64 || cfg.chart.height < 64) {
    throw Error(ErrorCode::kBadConfig, source_name + ": chart dimensions must be >= 64");
  }

  // Referenced files must exist before any processing starts.
  if (!fs::exists(cfg.input_path)) {
    throw Error(ErrorCode::kConfigError, source_name + ": input file not found: " + cfg.input_path);
  }
  if (!cfg.stopword_path.empty()) {
    if (!fs::exists(cfg.stopword_path)) {
      throw Error(ErrorCode::kConfigError,
                  source_name + ": stopword file not found: " + cfg.stopword_path);
    }
    std::ifstream sw(cfg.stopword_path, std::ios::binary);
    std::ostringstream content;
    content << sw.rdbuf();
    cfg.stopword_digest = sha256_hex(content.str());
    cfg.lexer.stopwords = load_stopwords(cfg.stopword_path);
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string dir = fs::path(path).parent_path().string();
  return parse_config(buf.str(), dir, path);
}

std::string PipelineConfig::digest() const {
  // Canonical parameter serialization; file locations are deliberately
  // excluded so identical analyses in different directories match.
  std::ostringstream s;
  s << "chart.height=" << chart.height << "\n";
  s << "chart.width=" << chart.width << "\n";
  s << "cluster.decay=" << format_double_key(stages.decay) << "\n";
  s << "cluster.linkage=" << linkage_name(linkage) << "\n";
  s << "cluster.max_stages=" << stages.max_stages << "\n";
  s << "cluster.theta_initial=" << format_double_key(stages.theta_initial) << "\n";
  s << "cluster.theta_min=" << format_double_key(stages.theta_min) << "\n";
  s << "lexer.min_df=" << lexer.min_df << "\n";
  s << "lexer.ngram_max=" << lexer.ngram_max << "\n";
  s << "lexer.ngram_min=" << lexer.ngram_min << "\n";
  s << "lexer.stopwords=" << stopword_digest << "\n";
  s << "lexer.title_weight=" << lexer.title_weight << "\n";
  s << "similarity.epsilon=" << format_double_key(epsilon) << "\n";
  s << "similarity.measure=" << measure_name(measure) << "\n";
  s << "similarity.weighting=" << weighting_name(weighting) << "\n";
  s << "topics.cuts=";
  for (std::size_t i = 0; i < cuts.size(); ++i) s << (i ? "," : "") << cuts[i];
  s << "\n";
  s << "topics.label_k=" << label_k << "\n";
  return sha256_hex(s.str());
}

}  // namespace coword
