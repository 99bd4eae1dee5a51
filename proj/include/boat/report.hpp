#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boat/analytics.hpp"
#include "boat/csv.hpp"
#include "boat/error.hpp"
#include "boat/money.hpp"

namespace boat {

// Plot-ready data documents: the numbers behind a chart, not the chart.
// Money leaves the library as dollars with two decimals, converted
// exactly from cents.

enum class PlotKind { GroupedBar, MultiLine, HistogramPlot };

inline const char* plot_kind_name(PlotKind k) {
  switch (k) {
    case PlotKind::GroupedBar: return "grouped_bar";
    case PlotKind::MultiLine: return "multi_line";
    case PlotKind::HistogramPlot: return "histogram";
  }
  return "?";
}

inline PlotKind plot_kind_from_name(const std::string& s) {
  if (s == "grouped_bar") return PlotKind::GroupedBar;
  if (s == "multi_line") return PlotKind::MultiLine;
  if (s == "histogram") return PlotKind::HistogramPlot;
  throw Error("document-syntax", "unknown plot kind '" + s + "'");
}

struct Axis {
  std::string label;
  std::string unit;  // e.g. "dollars", "cases", "year"
  bool operator==(const Axis&) const = default;
};

struct PlotSeries {
  std::string name;
  std::vector<std::string> x;
  // y cells are counts or cents depending on y_money; absent = gap
  std::vector<std::optional<std::int64_t>> y;
  bool operator==(const PlotSeries&) const = default;
};

struct PlotDocument {
  PlotKind kind = PlotKind::GroupedBar;
  std::string title;
  Axis x_axis;
  Axis y_axis;
  bool y_money = false;
  std::vector<PlotSeries> series;
  // provenance: source row count, the filters applied, free-form stats
  std::int64_t source_rows = 0;
  std::vector<std::string> filters;
  std::vector<std::pair<std::string, std::string>> extra;  // ordered key/value stats
  std::string timestamp;  // carried, excluded from equality

  bool operator==(const PlotDocument& o) const {
    return kind == o.kind && title == o.title && x_axis == o.x_axis && y_axis == o.y_axis &&
           y_money == o.y_money && series == o.series && source_rows == o.source_rows &&
           filters == o.filters && extra == o.extra;
  }
};

// ---------------------------------------------------------------------------
// Emitters

inline PlotDocument emit_bar(const ComparisonTable& table) {
  if (table.rows.empty()) throw Error("empty-result", "comparison table has no rows");
  PlotDocument doc;
  doc.kind = PlotKind::GroupedBar;
  doc.title = "Total costs by " + table.group_field + ", " + std::to_string(table.year0) + " vs " +
              std::to_string(table.year1);
  doc.x_axis = {table.group_field, "label"};
  doc.y_axis = {"total costs", "dollars"};
  doc.y_money = true;
  PlotSeries s0{std::to_string(table.year0), {}, {}};
  PlotSeries s1{std::to_string(table.year1), {}, {}};
  for (const auto& row : table.rows) {
    s0.x.push_back(row.label);
    s1.x.push_back(row.label);
    s0.y.push_back(row.total_y0);
    s1.y.push_back(row.total_y1);
  }
  doc.series = {std::move(s0), std::move(s1)};
  return doc;
}

inline PlotDocument emit_lines(const std::vector<TrendSeries>& series, bool money_metric,
                               const std::string& metric_label) {
  if (series.empty()) throw Error("empty-result", "no trend series to emit");
  for (const auto& s : series)
    if (s.years != series.front().years)
      throw Error("inconsistent-series", "series '" + s.group_label + "' has a different year vector");
  PlotDocument doc;
  doc.kind = PlotKind::MultiLine;
  doc.title = metric_label + " by year";
  doc.x_axis = {"year", "year"};
  doc.y_axis = {metric_label, money_metric ? "dollars" : "cases"};
  doc.y_money = money_metric;
  for (const auto& s : series) {
    PlotSeries line;
    line.name = s.group_label;
    for (std::size_t i = 0; i < s.years.size(); ++i) {
      line.x.push_back(std::to_string(s.years[i]));
      line.y.push_back(s.values[i]);
    }
    doc.series.push_back(std::move(line));
    if (s.pct_change_endpoints) {
      std::ostringstream pct;
      pct.precision(6);
      pct << *s.pct_change_endpoints;
      doc.extra.emplace_back("pct_change:" + s.group_label, pct.str());
    }
  }
  return doc;
}

inline PlotDocument emit_histogram(const CapReport& report) {
  PlotDocument doc;
  doc.kind = PlotKind::HistogramPlot;
  doc.title = "Cost distribution";
  doc.x_axis = {"cost bin left edge", "dollars"};
  doc.y_axis = {"patients", "cases"};
  doc.y_money = false;
  PlotSeries bars;
  bars.name = "costs";
  for (std::size_t i = 0; i < report.hist.counts.size(); ++i) {
    bars.x.push_back(format_money(report.hist.lo + static_cast<std::int64_t>(i) * report.hist.bin_width));
    bars.y.push_back(report.hist.counts[i]);
  }
  doc.series.push_back(std::move(bars));
  doc.extra.emplace_back("n", std::to_string(report.n));
  doc.extra.emplace_back("mean_dollars", format_money(report.mean));
  if (report.std_sample) {
    std::ostringstream sd;
    sd.precision(std::numeric_limits<double>::max_digits10);
    sd << (*report.std_sample / 100.0);  // cents -> dollars
    doc.extra.emplace_back("std_sample_dollars", sd.str());
  }
  doc.extra.emplace_back("threshold_dollars", format_money(report.threshold));
  {
    std::ostringstream fb;
    fb.precision(std::numeric_limits<double>::max_digits10);
    fb << report.fraction_below;
    doc.extra.emplace_back("fraction_below", fb.str());
  }
  doc.extra.emplace_back("underflow", std::to_string(report.hist.underflow));
  doc.extra.emplace_back("overflow", std::to_string(report.hist.overflow));
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string serialize_document(const PlotDocument& doc) {
  nlohmann::ordered_json j;
  j["kind"] = plot_kind_name(doc.kind);
  j["title"] = doc.title;
  j["axes"] = {{"x", {{"label", doc.x_axis.label}, {"unit", doc.x_axis.unit}}},
               {"y", {{"label", doc.y_axis.label}, {"unit", doc.y_axis.unit}}}};
  j["y_money"] = doc.y_money;
  j["series"] = nlohmann::ordered_json::array();
  for (const auto& s : doc.series) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["x"] = s.x;
    js["y"] = nlohmann::ordered_json::array();
    for (const auto& v : s.y) {
      if (!v) js["y"].push_back(nullptr);
      else if (doc.y_money) js["y"].push_back(format_money(*v));
      else js["y"].push_back(*v);
    }
    j["series"].push_back(std::move(js));
  }
  nlohmann::ordered_json meta;
  meta["source_rows"] = doc.source_rows;
  meta["filters"] = doc.filters;
  for (const auto& [k, v] : doc.extra) meta[k] = v;
  if (!doc.timestamp.empty()) meta["generated_at"] = doc.timestamp;
  j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

inline PlotDocument parse_document(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("document-syntax", e.what());
  }
  PlotDocument doc;
  try {
    doc.kind = plot_kind_from_name(j.at("kind").get<std::string>());
    doc.title = j.at("title").get<std::string>();
    doc.x_axis = {j.at("axes").at("x").at("label"), j.at("axes").at("x").at("unit")};
    doc.y_axis = {j.at("axes").at("y").at("label"), j.at("axes").at("y").at("unit")};
    doc.y_money = j.at("y_money").get<bool>();
    for (const auto& js : j.at("series")) {
      PlotSeries s;
      s.name = js.at("name").get<std::string>();
      s.x = js.at("x").get<std::vector<std::string>>();
      for (const auto& v : js.at("y")) {
        if (v.is_null()) s.y.emplace_back();
        else if (doc.y_money) s.y.push_back(parse_money(v.get<std::string>()));
        else s.y.push_back(v.get<std::int64_t>());
      }
      doc.series.push_back(std::move(s));
    }
    const auto& meta = j.at("metadata");
    for (const auto& [key, value] : meta.items()) {
      if (key == "source_rows") doc.source_rows = value.get<std::int64_t>();
      else if (key == "filters") doc.filters = value.get<std::vector<std::string>>();
      else if (key == "generated_at") doc.timestamp = value.get<std::string>();
      else doc.extra.emplace_back(key, value.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("document-syntax", e.what());
  }
  return doc;
}

// Flat one-row-per-point CSV for spreadsheet users.
inline std::string document_to_csv(const PlotDocument& doc) {
  std::ostringstream out;
  out << "series,x,y\n";
  for (const auto& s : doc.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::string y;
      if (s.y[i]) y = doc.y_money ? format_money(*s.y[i]) : std::to_string(*s.y[i]);
      write_csv_row(out, {s.name, s.x[i], y});
    }
  }
  return out.str();
}

}  // namespace boat
