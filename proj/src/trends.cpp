#include "coword/trends.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "coword/error.hpp"
#include "csv_record.hpp"

namespace coword {

namespace {

void validate_totals(const TrendTable& t) {
  std::int64_t grand_rows = 0;
  for (std::size_t y = 0; y < t.years.size(); ++y) {
    std::int64_t row = 0;
    for (std::int64_t c : t.counts[y]) row += c;
    if (row != t.row_totals[y]) {
      throw Error(ErrorCode::kInternal, "trend table row total mismatch");
    }
    grand_rows += row;
  }
  std::int64_t grand_cols = 0;
  for (std::size_t c = 0; c < t.topic_ids.size(); ++c) {
    std::int64_t col = 0;
    for (std::size_t y = 0; y < t.years.size(); ++y) col += t.counts[y][c];
    if (col != t.column_totals[c]) {
      throw Error(ErrorCode::kInternal, "trend table column total mismatch");
    }
    grand_cols += col;
  }
  if (grand_rows != t.grand_total || (!t.topic_ids.empty() && grand_cols != t.grand_total)) {
    throw Error(ErrorCode::kInternal, "trend table grand total mismatch");
  }
}

}  // namespace

TrendTable yearly_counts(const TopicAssignment& assignment, const Corpus& corpus) {
  TrendTable table;

  CorpusSummary summary = corpus_summary(corpus);
  if (summary.document_count > 0) {
    for (int y = summary.min_year; y <= summary.max_year; ++y) table.years.push_back(y);
  }

  // Column order: descending column total (== member count, since every
  // assigned doc exists in the corpus), ties toward the smaller topic id.
  struct Col {
    int topic_id;
    std::size_t size;
    const AssignedTopic* topic;
  };
  std::vector<Col> cols;
  cols.reserve(assignment.topics.size());
  for (const AssignedTopic& t : assignment.topics) {
    cols.push_back({t.topic_id, t.members.size(), &t});
  }
  std::sort(cols.begin(), cols.end(), [](const Col& a, const Col& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.topic_id < b.topic_id;
  });

  std::map<int, std::size_t> col_of_topic;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    table.topic_ids.push_back(cols[c].topic_id);
    table.topic_labels.push_back(TopicAssignment::topic_display(*cols[c].topic));
    col_of_topic[cols[c].topic_id] = c;
  }

  table.counts.assign(table.years.size(),
                      std::vector<std::int64_t>(table.topic_ids.size(), 0));
  table.row_totals.assign(table.years.size(), 0);
  table.column_totals.assign(table.topic_ids.size(), 0);

  for (const auto& [doc, topic_id] : assignment.doc_topic) {
    long pos = corpus.find(doc);
    if (pos < 0) {
      throw Error(ErrorCode::kUnknownDoc, "assigned document '" + doc + "' is not in the corpus");
    }
    auto cit = col_of_topic.find(topic_id);
    if (cit == col_of_topic.end()) {
      throw Error(ErrorCode::kCoverageGap,
                  "document '" + doc + "' is assigned to unknown topic " + std::to_string(topic_id));
    }
    std::size_t y = static_cast<std::size_t>(corpus.at(static_cast<std::size_t>(pos)).year -
                                             summary.min_year);
    std::size_t c = cit->second;
    ++table.counts[y][c];
    ++table.row_totals[y];
    ++table.column_totals[c];
    ++table.grand_total;
  }

  validate_totals(table);
  return table;
}

PercentTable yearly_percentages(const TrendTable& table) {
  PercentTable p;
  p.years = table.years;
  p.topic_ids = table.topic_ids;
  p.topic_labels = table.topic_labels;
  p.values.assign(table.years.size(), std::vector<double>(table.topic_ids.size(), 0.0));
  p.row_totals.assign(table.years.size(), 0.0);
  p.column_shares.assign(table.topic_ids.size(), 0.0);

  for (std::size_t y = 0; y < table.years.size(); ++y) {
    std::int64_t row = table.row_totals[y];
    if (row == 0) continue;  // zero rows stay zero
    double sum = 0.0;
    for (std::size_t c = 0; c < table.topic_ids.size(); ++c) {
      double v = 100.0 * static_cast<double>(table.counts[y][c]) / static_cast<double>(row);
      p.values[y][c] = v;
      sum += v;
    }
    p.row_totals[y] = sum;
  }
  if (table.grand_total > 0) {
    for (std::size_t c = 0; c < table.topic_ids.size(); ++c) {
      p.column_shares[c] = 100.0 * static_cast<double>(table.column_totals[c]) /
                           static_cast<double>(table.grand_total);
    }
  }
  return p;
}

double round_one_decimal(double v) {
  // nearbyint under the default FE_TONEAREST mode rounds halves to even.
  return std::nearbyint(v * 10.0) / 10.0;
}

namespace {

std::string one_decimal(double v) {
  auto scaled = static_cast<long long>(std::nearbyint(v * 10.0));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%lld", scaled / 10, std::llabs(scaled % 10));
  return buf;
}

void write_header(const std::vector<std::string>& labels, std::ostream& out) {
  out << "year";
  for (const std::string& label : labels) out << "," << csv::quote_field(label);
  out << ",total\n";
}

}  // namespace

void write_trend_csv(const TrendTable& table, std::ostream& out) {
  write_header(table.topic_labels, out);
  for (std::size_t y = 0; y < table.years.size(); ++y) {
    out << table.years[y];
    for (std::size_t c = 0; c < table.topic_ids.size(); ++c) out << "," << table.counts[y][c];
    out << "," << table.row_totals[y] << "\n";
  }
  out << "total";
  for (std::int64_t col : table.column_totals) out << "," << col;
  out << "," << table.grand_total << "\n";
}

void write_percent_csv(const PercentTable& table, std::ostream& out) {
  write_header(table.topic_labels, out);
  for (std::size_t y = 0; y < table.years.size(); ++y) {
    out << table.years[y];
    for (std::size_t c = 0; c < table.topic_ids.size(); ++c) {
      out << "," << one_decimal(table.values[y][c]);
    }
    out << "," << one_decimal(table.row_totals[y]) << "\n";
  }
  out << "total";
  double share_sum = 0.0;
  for (double share : table.column_shares) {
    out << "," << one_decimal(share);
    share_sum += share;
  }
  out << "," << one_decimal(share_sum) << "\n";
}

}  // namespace coword
