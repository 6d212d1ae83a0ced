#include "coword/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coword/error.hpp"
#include "coword/text.hpp"
#include "csv_record.hpp"

namespace coword {

namespace {

using nlohmann::json;

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

// Raw field values of one record before validation. Absent and empty are
// distinguished for MISSING_FIELD reporting.
struct RawRecord {
  std::optional<std::string> id;
  std::optional<std::string> title;
  std::optional<std::string> abstract;
  std::optional<std::string> year;
  std::map<std::string, std::string> meta;
  std::size_t line = 0;
};

int parse_year(const std::string& raw, const std::string& source, std::size_t line) {
  std::string s = text::trim(raw);
  if (s.empty()) {
    throw Error(ErrorCode::kMissingField, where(source, line) + ": year is empty");
  }
  std::size_t pos = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (pos == s.size() || !std::all_of(s.begin() + static_cast<long>(pos), s.end(),
                                      [](unsigned char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::kBadYear, where(source, line) + ": year '" + s + "' is not an integer");
  }
  long value;
  try {
    value = std::stol(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kBadYear, where(source, line) + ": year '" + s + "' out of range");
  }
  if (value < kMinYear || value > kMaxYear) {
    throw Error(ErrorCode::kBadYear,
                where(source, line) + ": year " + std::to_string(value) + " outside [" +
                    std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) + "]");
  }
  return static_cast<int>(value);
}

BibRecord validate_record(RawRecord&& raw, const std::string& source) {
  const std::size_t line = raw.line;
  if (!raw.id.has_value() || text::trim(*raw.id).empty()) {
    throw Error(ErrorCode::kMissingField, where(source, line) + ": missing id");
  }
  if (!raw.title.has_value()) {
    throw Error(ErrorCode::kMissingField, where(source, line) + ": missing title");
  }
  if (!raw.year.has_value()) {
    throw Error(ErrorCode::kMissingField, where(source, line) + ": missing year");
  }

  BibRecord rec;
  rec.id = text::nfc(text::trim(*raw.id));
  rec.title = text::nfc(text::trim(*raw.title));
  if (rec.title.empty()) {
    throw Error(ErrorCode::kMissingField, where(source, line) + ": title is empty");
  }
  rec.abstract = raw.abstract ? text::nfc(text::trim(*raw.abstract)) : std::string();
  rec.year = parse_year(*raw.year, source, line);
  rec.meta = std::move(raw.meta);
  return rec;
}

void check_utf8(const std::string& s, const std::string& source, std::size_t line) {
  if (!text::is_valid_utf8(s)) {
    throw Error(ErrorCode::kMalformedRow, where(source, line) + ": invalid UTF-8");
  }
}

}  // namespace

Corpus ingest_csv(std::istream& in, const std::string& source_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string data = buf.str();
  if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    data.erase(0, 3);  // UTF-8 BOM
  }

  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t record_line = 1;
  std::vector<std::string> fields;

  if (!csv::next_record(data, pos, line, fields, record_line, source_name)) {
    throw Error(ErrorCode::kMalformedRow, source_name + ":1: missing CSV header row");
  }

  // Header: id/title/abstract/year recognized case-insensitively, anything
  // else becomes a meta column.
  enum Col { kId, kTitle, kAbstract, kYear, kMeta };
  struct Column {
    Col kind;
    std::string meta_key;
  };
  std::vector<Column> columns;
  bool seen[4] = {false, false, false, false};
  std::map<std::string, bool> seen_meta;
  for (const std::string& h : fields) {
    check_utf8(h, source_name, record_line);
    std::string name = text::ascii_lower(text::trim(h));
    Col kind = kMeta;
    if (name == "id") kind = kId;
    else if (name == "title") kind = kTitle;
    else if (name == "abstract") kind = kAbstract;
    else if (name == "year") kind = kYear;
    if (kind != kMeta) {
      if (seen[kind]) {
        throw Error(ErrorCode::kMalformedRow,
                    where(source_name, record_line) + ": duplicate column '" + name + "'");
      }
      seen[kind] = true;
      columns.push_back({kind, {}});
    } else {
      std::string key = text::trim(h);
      if (key.empty() || seen_meta.count(key)) {
        throw Error(ErrorCode::kMalformedRow,
                    where(source_name, record_line) + ": bad header column '" + h + "'");
      }
      seen_meta[key] = true;
      columns.push_back({kMeta, key});
    }
  }

  std::vector<BibRecord> records;
  while (csv::next_record(data, pos, line, fields, record_line, source_name)) {
    if (fields.size() != columns.size()) {
      throw Error(ErrorCode::kMalformedRow,
                  where(source_name, record_line) + ": expected " +
                      std::to_string(columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    RawRecord raw;
    raw.line = record_line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      check_utf8(fields[i], source_name, record_line);
      switch (columns[i].kind) {
        case kId: raw.id = fields[i]; break;
        case kTitle: raw.title = fields[i]; break;
        case kAbstract: raw.abstract = fields[i]; break;
        case kYear: raw.year = fields[i]; break;
        case kMeta: raw.meta[columns[i].meta_key] = fields[i]; break;
      }
    }
    records.push_back(validate_record(std::move(raw), source_name));
  }
  return Corpus(std::move(records));
}

Corpus ingest_jsonl(std::istream& in, const std::string& source_name) {
  std::vector<BibRecord> records;
  std::string line_text;
  std::size_t line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (!line_text.empty() && line_text.back() == '\r') line_text.pop_back();
    if (line == 1 && line_text.size() >= 3 && line_text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line_text.erase(0, 3);
    }
    if (text::trim(line_text).empty()) continue;
    check_utf8(line_text, source_name, line);

    json obj;
    try {
      obj = json::parse(line_text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedRow,
                  where(source_name, line) + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kMalformedRow,
                  where(source_name, line) + ": JSONL line is not an object");
    }

    RawRecord raw;
    raw.line = line;
    for (const auto& [key, value] : obj.items()) {
      std::string name = text::ascii_lower(text::trim(key));
      if (value.is_null()) continue;
      if (name == "id") {
        if (raw.id) {
          throw Error(ErrorCode::kMalformedRow,
                      where(source_name, line) + ": duplicate key 'id'");
        }
        if (value.is_string()) raw.id = value.get<std::string>();
        else if (value.is_number_integer()) raw.id = std::to_string(value.get<std::int64_t>());
        else throw Error(ErrorCode::kMalformedRow, where(source_name, line) + ": id must be a string");
      } else if (name == "title" || name == "abstract") {
        auto& slot = name == "title" ? raw.title : raw.abstract;
        if (slot) {
          throw Error(ErrorCode::kMalformedRow,
                      where(source_name, line) + ": duplicate key '" + name + "'");
        }
        if (!value.is_string()) {
          throw Error(ErrorCode::kMalformedRow,
                      where(source_name, line) + ": " + name + " must be a string");
        }
        slot = value.get<std::string>();
      } else if (name == "year") {
        if (raw.year) {
          throw Error(ErrorCode::kMalformedRow,
                      where(source_name, line) + ": duplicate key 'year'");
        }
        if (value.is_number_integer()) raw.year = std::to_string(value.get<std::int64_t>());
        else if (value.is_string()) raw.year = value.get<std::string>();
        else throw Error(ErrorCode::kBadYear, where(source_name, line) + ": year must be an integer");
      } else {
        raw.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    records.push_back(validate_record(std::move(raw), source_name));
  }
  return Corpus(std::move(records));
}

Corpus ingest_records(const std::string& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open input file: " + path);
  return format == CorpusFormat::kCsv ? ingest_csv(in, path) : ingest_jsonl(in, path);
}

Corpus::Corpus(std::vector<BibRecord> records) : records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(), [](const BibRecord& a, const BibRecord& b) {
    if (a.year != b.year) return a.year < b.year;
    return a.id < b.id;
  });
  id_index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto [it, inserted] = id_index_.emplace(records_[i].id, i);
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId, "duplicate record id '" + records_[i].id + "'");
    }
  }
}

long Corpus::find(const std::string& id) const {
  auto it = id_index_.find(id);
  return it == id_index_.end() ? -1 : static_cast<long>(it->second);
}

CorpusSummary corpus_summary(const Corpus& corpus) {
  CorpusSummary s;
  s.document_count = corpus.size();
  for (const BibRecord& r : corpus.records()) {
    ++s.per_year[r.year];
  }
  if (!s.per_year.empty()) {
    s.min_year = s.per_year.begin()->first;
    s.max_year = s.per_year.rbegin()->first;
  }
  return s;
}

void emit_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const BibRecord& r : corpus.records()) {
    json obj;
    obj["id"] = r.id;
    obj["title"] = r.title;
    obj["abstract"] = r.abstract;
    obj["year"] = r.year;
    for (const auto& [k, v] : r.meta) obj[k] = v;
    out << obj.dump() << "\n";
  }
}

}  // namespace coword
