#ifndef COWORD_TRENDS_HPP
#define COWORD_TRENDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coword/corpus.hpp"
#include "coword/topics.hpp"

namespace coword {

// Year-by-topic article counts with totals. Years are contiguous over the
// corpus year range (gap years hold zero rows); columns are ordered by
// descending column total, ties toward the smaller topic id.
struct TrendTable {
  std::vector<int> years;
  std::vector<int> topic_ids;
  std::vector<std::string> topic_labels;
  std::vector<std::vector<std::int64_t>> counts;  // [year][topic]
  std::vector<std::int64_t> row_totals;
  std::vector<std::int64_t> column_totals;
  std::int64_t grand_total = 0;
};

// Per-year topic percentages (rows of a nonzero year sum to 100). The
// totals row carries each topic's share of the grand total.
struct PercentTable {
  std::vector<int> years;
  std::vector<int> topic_ids;
  std::vector<std::string> topic_labels;
  std::vector<std::vector<double>> values;  // [year][topic]
  std::vector<double> row_totals;           // 100 for nonzero years, else 0
  std::vector<double> column_shares;        // 100 * column_total / grand_total
};

TrendTable yearly_counts(const TopicAssignment& assignment, const Corpus& corpus);

PercentTable yearly_percentages(const TrendTable& table);

// CSV shape: header `year,<label...>,total`, one row per year, final `total`
// row. Percent values are written with one decimal (round half to even).
void write_trend_csv(const TrendTable& table, std::ostream& out);
void write_percent_csv(const PercentTable& table, std::ostream& out);

// Rounds to one decimal, ties to even, as used by the percent CSV.
double round_one_decimal(double v);

}  // namespace coword

#endif  // COWORD_TRENDS_HPP
