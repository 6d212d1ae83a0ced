#ifndef COWORD_CHART_HPP
#define COWORD_CHART_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coword {

// Parsed year-by-topic table as read back from a trends CSV.
struct ChartTable {
  std::vector<int> years;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // [year][topic]
};

// Reads the `year,<label...>,total` CSV shape produced by the trends stage;
// the trailing totals row and column are dropped.
ChartTable read_table_csv(std::istream& in, const std::string& source_name);

enum class ChartMode { kCounts, kPercent };

struct ChartStyle {
  int width = 960;
  int height = 540;
};

// Deterministic SVG 1.1 line chart: one polyline and one legend entry per
// topic, years on the x axis. Byte-identical output for identical input.
std::string render_line_chart(const ChartTable& table, ChartMode mode, const ChartStyle& style);

}  // namespace coword

#endif  // COWORD_CHART_HPP
