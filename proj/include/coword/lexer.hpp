#ifndef COWORD_LEXER_HPP
#define COWORD_LEXER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coword/corpus.hpp"
#include "coword/text.hpp"

namespace coword {

using TermId = std::int32_t;
using TermMultiset = std::map<std::string, std::int64_t>;

struct Token {
  std::string surface;  // nonempty; Latin surfaces are lowercased
  text::Script script;

  bool operator==(const Token&) const = default;
};

struct LexerConfig {
  int ngram_min = 2;  // CJK n-gram bounds, in code points
  int ngram_max = 3;
  std::int64_t min_df = 2;
  int title_weight = 1;
  std::set<std::string> stopwords;  // applied to Latin terms only
};

// Splits text into script-homogeneous runs of letters/digits. Punctuation
// and whitespace separate tokens and are dropped.
std::vector<Token> tokenize(std::string_view utf8_text);

// Terms of one document: Latin tokens pass through (unless stopworded or a
// single character); each CJK run yields its contiguous character n-grams
// for n in [ngram_min, min(ngram_max, run length)], or the whole run when
// shorter than ngram_min. Digit and other-script tokens are dropped.
TermMultiset extract_terms(const std::vector<Token>& tokens, const LexerConfig& config);

struct TermStats {
  TermId id = 0;
  std::int64_t df = 0;  // documents containing the term
  std::int64_t cf = 0;  // total occurrences
};

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::map<std::string, TermStats> terms, std::int64_t n_docs, std::int64_t min_df);

  std::size_t size() const { return by_id_.size(); }
  std::int64_t n_docs() const { return n_docs_; }
  std::int64_t min_df() const { return min_df_; }

  std::optional<TermId> term_id(const std::string& term) const;
  const std::string& term(TermId id) const { return by_id_.at(static_cast<std::size_t>(id)); }
  std::int64_t df(TermId id) const { return df_by_id_.at(static_cast<std::size_t>(id)); }
  std::int64_t cf(TermId id) const { return cf_by_id_.at(static_cast<std::size_t>(id)); }

  // Lexicographic term order == id order.
  const std::vector<std::string>& terms() const { return by_id_; }

 private:
  std::map<std::string, TermStats> terms_;
  std::vector<std::string> by_id_;
  std::vector<std::int64_t> df_by_id_;
  std::vector<std::int64_t> cf_by_id_;
  std::int64_t n_docs_ = 0;
  std::int64_t min_df_ = 1;
};

// Builds the vocabulary over all documents' term multisets. Terms with
// df < min_df are excluded; ids are assigned in lexicographic term order.
Vocabulary build_vocabulary(const std::vector<TermMultiset>& documents, std::int64_t min_df);

// Per-document term counts over vocabulary ids, sorted by id.
struct TermVector {
  std::string doc_id;
  std::vector<std::pair<TermId, std::int64_t>> counts;

  bool empty() const { return counts.empty(); }
  bool contains(TermId id) const;
};

// Pools title and abstract terms (title counts scaled by title_weight) and
// keeps in-vocabulary terms only. May return an empty vector.
TermVector vectorize(const BibRecord& record, const Vocabulary& vocabulary,
                     const LexerConfig& config);

// Stopword file: UTF-8, one term per line, '#' comment lines. Entries are
// NFC-normalized and lowercased.
std::set<std::string> load_stopwords(const std::string& path);

}  // namespace coword

#endif  // COWORD_LEXER_HPP
