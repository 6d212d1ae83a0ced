#ifndef COWORD_CORPUS_HPP
#define COWORD_CORPUS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace coword {

inline constexpr int kMinYear = 1800;
inline constexpr int kMaxYear = 2100;

enum class CorpusFormat { kCsv, kJsonl };

struct BibRecord {
  std::string id;
  std::string title;
  std::string abstract;  // may be empty
  int year = 0;
  std::map<std::string, std::string> meta;  // unrecognized columns/keys

  bool operator==(const BibRecord&) const = default;
};

// Validated record collection in canonical (year, id) order.
class Corpus {
 public:
  Corpus() = default;

  // Takes validated, normalized records; sorts them canonically and builds
  // the id index. Throws DUPLICATE_ID.
  explicit Corpus(std::vector<BibRecord> records);

  const std::vector<BibRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const BibRecord& at(std::size_t pos) const { return records_.at(pos); }

  // Position of id, or -1.
  long find(const std::string& id) const;

  bool operator==(const Corpus& other) const { return records_ == other.records_; }

 private:
  std::vector<BibRecord> records_;
  std::unordered_map<std::string, std::size_t> id_index_;
};

struct CorpusSummary {
  std::size_t document_count = 0;
  int min_year = 0;  // 0 when corpus is empty
  int max_year = 0;
  std::map<int, std::size_t> per_year;
};

Corpus ingest_records(const std::string& path, CorpusFormat format);
Corpus ingest_csv(std::istream& in, const std::string& source_name);
Corpus ingest_jsonl(std::istream& in, const std::string& source_name);

CorpusSummary corpus_summary(const Corpus& corpus);

// Re-emits the normalized corpus as JSONL in canonical order. Ingesting the
// output reproduces an equal Corpus.
void emit_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace coword

#endif  // COWORD_CORPUS_HPP
