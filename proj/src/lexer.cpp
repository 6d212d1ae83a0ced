#include "coword/lexer.hpp"

#include <algorithm>
#include <fstream>

#include "coword/error.hpp"

namespace coword {

std::vector<Token> tokenize(std::string_view utf8_text) {
  std::vector<Token> tokens;
  std::vector<char32_t> cps = text::decode_utf8(utf8_text);

  std::vector<char32_t> run;
  text::Script run_script = text::Script::kOther;
  auto flush = [&] {
    if (run.empty()) return;
    if (run_script == text::Script::kLatin) {
      for (char32_t& cp : run) cp = text::to_lower(cp);
    }
    tokens.push_back(Token{text::encode_utf8(run), run_script});
    run.clear();
  };

  for (char32_t cp : cps) {
    if (!text::is_word_cp(cp)) {
      flush();
      continue;
    }
    text::Script s = text::classify(cp);
    if (!run.empty() && s != run_script) flush();
    run_script = s;
    run.push_back(cp);
  }
  flush();
  return tokens;
}

TermMultiset extract_terms(const std::vector<Token>& tokens, const LexerConfig& config) {
  if (config.ngram_min < 2 || config.ngram_max < config.ngram_min) {
    throw Error(ErrorCode::kBadConfig,
                "ngram bounds must satisfy 2 <= ngram_min <= ngram_max (got " +
                    std::to_string(config.ngram_min) + ".." + std::to_string(config.ngram_max) +
                    ")");
  }

  TermMultiset terms;
  for (const Token& tok : tokens) {
    switch (tok.script) {
      case text::Script::kLatin: {
        if (config.stopwords.count(tok.surface)) break;
        // Single-character Latin tokens are noise.
        std::vector<char32_t> cps = text::decode_utf8(tok.surface);
        if (cps.size() < 2) break;
        ++terms[tok.surface];
        break;
      }
      case text::Script::kCjk: {
        std::vector<char32_t> cps = text::decode_utf8(tok.surface);
        auto len = static_cast<int>(cps.size());
        if (len < config.ngram_min) {
          ++terms[tok.surface];
          break;
        }
        int max_n = std::min(config.ngram_max, len);
        for (int n = config.ngram_min; n <= max_n; ++n) {
          for (int start = 0; start + n <= len; ++start) {
            std::string gram;
            for (int k = 0; k < n; ++k) text::append_utf8(gram, cps[static_cast<std::size_t>(start + k)]);
            ++terms[gram];
          }
        }
        break;
      }
      case text::Script::kDigit:
      case text::Script::kOther:
        break;
    }
  }
  return terms;
}

Vocabulary::Vocabulary(std::map<std::string, TermStats> terms, std::int64_t n_docs,
                       std::int64_t min_df)
    : terms_(std::move(terms)), n_docs_(n_docs), min_df_(min_df) {
  by_id_.reserve(terms_.size());
  df_by_id_.reserve(terms_.size());
  cf_by_id_.reserve(terms_.size());
  for (const auto& [term, stats] : terms_) {
    if (stats.id != static_cast<TermId>(by_id_.size())) {
      throw Error(ErrorCode::kInternal, "vocabulary ids are not dense lexicographic");
    }
    by_id_.push_back(term);
    df_by_id_.push_back(stats.df);
    cf_by_id_.push_back(stats.cf);
  }
}

std::optional<TermId> Vocabulary::term_id(const std::string& term) const {
  auto it = terms_.find(term);
  if (it == terms_.end()) return std::nullopt;
  return it->second.id;
}

Vocabulary build_vocabulary(const std::vector<TermMultiset>& documents, std::int64_t min_df) {
  if (documents.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot build a vocabulary from zero documents");
  }
  if (min_df < 1) {
    throw Error(ErrorCode::kBadConfig, "min_df must be >= 1");
  }

  std::map<std::string, TermStats> stats;
  for (const TermMultiset& doc : documents) {
    for (const auto& [term, count] : doc) {
      TermStats& s = stats[term];
      s.df += 1;
      s.cf += count;
    }
  }
  for (auto it = stats.begin(); it != stats.end();) {
    if (it->second.df < min_df) it = stats.erase(it);
    else ++it;
  }
  TermId next = 0;
  for (auto& [term, s] : stats) s.id = next++;
  return Vocabulary(std::move(stats), static_cast<std::int64_t>(documents.size()), min_df);
}

bool TermVector::contains(TermId id) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), id,
                             [](const auto& e, TermId v) { return e.first < v; });
  return it != counts.end() && it->first == id;
}

TermVector vectorize(const BibRecord& record, const Vocabulary& vocabulary,
                     const LexerConfig& config) {
  TermMultiset title_terms = extract_terms(tokenize(record.title), config);
  TermMultiset abstract_terms = extract_terms(tokenize(record.abstract), config);

  std::map<TermId, std::int64_t> counts;
  for (const auto& [term, count] : title_terms) {
    if (auto id = vocabulary.term_id(term)) {
      std::int64_t c = count * config.title_weight;
      if (c > 0) counts[*id] += c;
    }
  }
  for (const auto& [term, count] : abstract_terms) {
    if (auto id = vocabulary.term_id(term)) counts[*id] += count;
  }

  TermVector v;
  v.doc_id = record.id;
  v.counts.assign(counts.begin(), counts.end());
  return v;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open stopword file: " + path);

  std::set<std::string> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string entry = text::trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    if (!text::is_valid_utf8(entry)) {
      throw Error(ErrorCode::kConfigError,
                  path + ":" + std::to_string(lineno) + ": stopword file is not valid UTF-8");
    }
    std::vector<char32_t> cps = text::decode_utf8(text::nfc(entry));
    for (char32_t& cp : cps) cp = text::to_lower(cp);
    words.insert(text::encode_utf8(cps));
  }
  return words;
}

}  // namespace coword
