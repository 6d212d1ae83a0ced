#include "coword/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "coword/error.hpp"
#include "csv_record.hpp"
#include "coword/text.hpp"

namespace coword {

namespace {

double parse_number(const std::string& s, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedRow,
                source + ":" + std::to_string(line) + ": expected a number, got '" + s + "'");
  }
}

}  // namespace

ChartTable read_table_csv(std::istream& in, const std::string& source_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string data = buf.str();

  std::size_t pos = 0, line = 1, record_line = 1;
  std::vector<std::string> fields;
  if (!csv::next_record(data, pos, line, fields, record_line, source_name)) {
    throw Error(ErrorCode::kEmptyTable, source_name + ": empty table file");
  }
  if (fields.size() < 2 || text::ascii_lower(fields.front()) != "year" ||
      text::ascii_lower(fields.back()) != "total") {
    throw Error(ErrorCode::kStageMismatch,
                source_name + ": not a trends CSV (expected header year,...,total)");
  }

  ChartTable table;
  table.labels.assign(fields.begin() + 1, fields.end() - 1);

  bool saw_total_row = false;
  while (csv::next_record(data, pos, line, fields, record_line, source_name)) {
    if (saw_total_row) {
      throw Error(ErrorCode::kMalformedRow,
                  source_name + ":" + std::to_string(record_line) + ": rows after the total row");
    }
    if (fields.size() != table.labels.size() + 2) {
      throw Error(ErrorCode::kMalformedRow,
                  source_name + ":" + std::to_string(record_line) + ": wrong field count");
    }
    if (text::ascii_lower(fields[0]) == "total") {
      saw_total_row = true;
      continue;
    }
    double year = parse_number(fields[0], source_name, record_line);
    table.years.push_back(static_cast<int>(year));
    std::vector<double> row;
    row.reserve(table.labels.size());
    for (std::size_t c = 1; c + 1 < fields.size(); ++c) {
      row.push_back(parse_number(fields[c], source_name, record_line));
    }
    table.values.push_back(std::move(row));
  }
  return table;
}

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c); break;
    }
  }
  return out;
}

std::string px(double v) {
  if (v == 0.0) v = 0.0;  // avoid "-0.00"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Smallest {1,2,5}*10^k not below v.
double nice_ceiling(double v) {
  if (v <= 0.0) return 1.0;
  double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * step >= v) return mag * step;
  }
  return mag * 10.0;
}

}  // namespace

std::string render_line_chart(const ChartTable& table, ChartMode mode, const ChartStyle& style) {
  if (table.years.empty() || table.labels.empty()) {
    throw Error(ErrorCode::kEmptyTable, "line chart requires at least one year and one topic");
  }
  for (const auto& row : table.values) {
    if (row.size() != table.labels.size()) {
      throw Error(ErrorCode::kInternal, "ragged chart table");
    }
  }

  const double width = style.width;
  const double height = style.height;
  const double left = 64.0, top = 24.0, bottom = 48.0;
  const double legend_width = std::min(220.0, width * 0.28);
  const double right = legend_width + 24.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double vmax = 0.0;
  for (const auto& row : table.values) {
    for (double v : row) vmax = std::max(vmax, v);
  }
  const double y_top = nice_ceiling(vmax);

  const std::size_t n_years = table.years.size();
  auto x_of = [&](std::size_t i) {
    if (n_years == 1) return left + plot_w / 2.0;
    return left + plot_w * static_cast<double>(i) / static_cast<double>(n_years - 1);
  };
  auto y_of = [&](double v) { return top + plot_h * (1.0 - v / y_top); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(style.width) + "\" height=\"" + std::to_string(style.height) +
         "\" viewBox=\"0 0 " + std::to_string(style.width) + " " + std::to_string(style.height) +
         "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" fill=\"#ffffff\"/>\n";

  // Gridlines and y tick labels.
  svg += "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int t = 1; t <= 5; ++t) {
    double v = y_top * t / 5.0;
    svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(y_of(v)) + "\" x2=\"" +
           px(left + plot_w) + "\" y2=\"" + px(y_of(v)) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<g class=\"axis\" stroke=\"#333333\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) + "\" y2=\"" +
         px(top + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" +
         px(left + plot_w) + "\" y2=\"" + px(top + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int t = 0; t <= 5; ++t) {
    double v = y_top * t / 5.0;
    svg += "<text x=\"" + px(left - 8.0) + "\" y=\"" + px(y_of(v) + 4.0) +
           "\" text-anchor=\"end\">" + tick_label(v) + (mode == ChartMode::kPercent ? "%" : "") +
           "</text>\n";
  }
  std::size_t year_step = n_years > 20 ? (n_years + 19) / 20 : 1;
  for (std::size_t i = 0; i < n_years; i += year_step) {
    svg += "<text x=\"" + px(x_of(i)) + "\" y=\"" + px(top + plot_h + 20.0) +
           "\" text-anchor=\"middle\">" + std::to_string(table.years[i]) + "</text>\n";
  }
  svg += "</g>\n";

  // One polyline per topic.
  svg += "<g class=\"series\" fill=\"none\" stroke-width=\"2\">\n";
  for (std::size_t c = 0; c < table.labels.size(); ++c) {
    std::string points;
    for (std::size_t i = 0; i < n_years; ++i) {
      if (i) points += " ";
      points += px(x_of(i)) + "," + px(y_of(table.values[i][c]));
    }
    svg += "<polyline stroke=\"" + std::string(kPalette[c % kPaletteSize]) + "\" points=\"" +
           points + "\"/>\n";
  }
  svg += "</g>\n";

  // Legend, one entry per topic.
  double lx = width - legend_width - 8.0;
  svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (std::size_t c = 0; c < table.labels.size(); ++c) {
    double ly = top + 8.0 + 18.0 * static_cast<double>(c);
    svg += "<g class=\"legend-entry\">";
    svg += "<rect x=\"" + px(lx) + "\" y=\"" + px(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
           std::string(kPalette[c % kPaletteSize]) + "\"/>";
    svg += "<text x=\"" + px(lx + 18.0) + "\" y=\"" + px(ly + 10.0) + "\">" +
           xml_escape(table.labels[c]) + "</text>";
    svg += "</g>\n";
  }
  svg += "</g>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace coword
