#ifndef COWORD_SRC_CSV_RECORD_HPP
#define COWORD_SRC_CSV_RECORD_HPP

#include <string>
#include <vector>

#include "coword/error.hpp"

namespace coword::csv {

// Scans one RFC-4180-style record starting at `pos`: quoted fields may
// contain commas, doubled quotes and newlines. `line` counts physical lines;
// `record_line` receives the line the record starts on. Returns false at
// end of input.
inline bool next_record(const std::string& data, std::size_t& pos, std::size_t& line,
                        std::vector<std::string>& fields, std::size_t& record_line,
                        const std::string& source) {
  fields.clear();
  while (pos < data.size() && (data[pos] == '\n' || data[pos] == '\r')) {
    if (data[pos] == '\n') ++line;
    ++pos;
  }
  if (pos >= data.size()) return false;

  record_line = line;
  std::string field;
  bool quoted = false;
  bool done = false;
  while (!done) {
    if (pos >= data.size()) {
      if (quoted) {
        throw Error(ErrorCode::kMalformedRow,
                    source + ":" + std::to_string(record_line) + ": unterminated quoted field");
      }
      fields.push_back(field);
      break;
    }
    char c = data[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < data.size() && data[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
        ++pos;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw Error(ErrorCode::kMalformedRow,
                      source + ":" + std::to_string(record_line) + ": quote inside unquoted field");
        }
        quoted = true;
        ++pos;
        break;
      case ',':
        fields.push_back(field);
        field.clear();
        ++pos;
        break;
      case '\r':
        ++pos;
        break;
      case '\n':
        ++line;
        ++pos;
        fields.push_back(field);
        done = true;
        break;
      default:
        field.push_back(c);
        ++pos;
        break;
    }
  }
  return true;
}

inline std::string quote_field(const std::string& value) {
  bool needs_quotes = value.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace coword::csv

#endif  // COWORD_SRC_CSV_RECORD_HPP
