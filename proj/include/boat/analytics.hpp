#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boat/engine.hpp"
#include "boat/error.hpp"
#include "boat/frame.hpp"
#include "boat/money.hpp"

namespace boat {

// percent change from base to new; base must be positive.
inline double percent_change(double base, double now) {
  if (base <= 0.0) throw Error("undefined-baseline", "percent change needs a positive base");
  return 100.0 * (now - base) / base;
}

// ---------------------------------------------------------------------------
// Cross-year cost comparison (grouped bar shape)

struct ComparisonRow {
  std::string label;
  Money total_y0 = 0;
  Money total_y1 = 0;
};

struct ComparisonTable {
  std::string group_field;
  std::int64_t year0 = 0;
  std::int64_t year1 = 0;  // ranking year
  std::vector<ComparisonRow> rows;  // descending by year1 total, ties ascending label
};

// Totals cost per (group label, year) within the slice and ranks labels
// by the later year's total. `skip_top` drops the leading labels before
// `top` are taken, so callers can set rank-1 outliers aside.
inline ComparisonTable cost_comparison(const Frame& frame, const Predicate& slice,
                                       const std::string& group_field,
                                       std::pair<std::int64_t, std::int64_t> years, std::size_t top,
                                       std::size_t skip_top = 0) {
  auto [y0, y1] = years;
  if (y0 >= y1) throw Error("invalid-years", "year pair must be ascending");
  if (frame.column(group_field).type() != ColumnType::Text)
    throw Error("predicate-type", "group field '" + group_field + "' must be a text column");
  const auto& year_col = frame.role_column("year");
  const auto& cost_col = frame.role_column("cost");

  Predicate pred = slice;
  pred.push_back(FilterClause::one_of_num(year_col, {y0, y1}));
  Frame sliced = filter(frame, pred);

  Frame grouped = group_aggregate(sliced, {group_field, year_col},
                                  {{cost_col, AggFn::Sum, "total"}});

  std::map<std::string, ComparisonRow> by_label;
  const auto& labels = grouped.column(group_field);
  const auto& yrs = grouped.column(year_col);
  const auto& totals = grouped.column("total");
  for (std::size_t r = 0; r < grouped.row_count(); ++r) {
    if (labels.is_null(r)) continue;
    auto& row = by_label[labels.as_text(r)];
    row.label = labels.as_text(r);
    auto total = totals.is_null(r) ? 0 : totals.as_int(r);
    if (yrs.as_int(r) == y0) row.total_y0 = total;
    else row.total_y1 = total;
  }

  ComparisonTable table;
  table.group_field = group_field;
  table.year0 = y0;
  table.year1 = y1;
  for (auto& [label, row] : by_label) table.rows.push_back(row);
  std::sort(table.rows.begin(), table.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.total_y1 != b.total_y1) return a.total_y1 > b.total_y1;
    return a.label < b.label;
  });
  if (skip_top < table.rows.size())
    table.rows.erase(table.rows.begin(), table.rows.begin() + static_cast<std::ptrdiff_t>(skip_top));
  else
    table.rows.clear();
  if (table.rows.size() > top) table.rows.resize(top);
  return table;
}

// ---------------------------------------------------------------------------
// Grouped trends (multi-line shape)

enum class TrendMetric { Count, SumCost, MeanCost };

struct TrendSeries {
  std::string group_label;
  std::vector<std::int64_t> years;
  // count or cents per year; absent means no rows for a mean cell
  std::vector<std::optional<std::int64_t>> values;
  std::optional<double> pct_change_endpoints;
};

// Metric per (group, year); keeps the top_k groups ranked by the final
// year's metric (ties ascending label). Missing cells are 0 for
// count/sum and absent for mean. A zero or absent first-year value
// yields an absent percent change.
inline std::vector<TrendSeries> trend_by_group(const Frame& frame, const Predicate& slice,
                                               const std::string& group_field, TrendMetric metric,
                                               const std::vector<std::int64_t>& years,
                                               std::size_t top_k) {
  if (years.size() < 2) throw Error("invalid-years", "need at least two years");
  if (!std::is_sorted(years.begin(), years.end()))
    throw Error("invalid-years", "years must be ascending");
  if (frame.column(group_field).type() != ColumnType::Text)
    throw Error("predicate-type", "group field '" + group_field + "' must be a text column");
  const auto& year_col = frame.role_column("year");

  Predicate pred = slice;
  pred.push_back(FilterClause::one_of_num(year_col, years));
  Frame sliced = filter(frame, pred);

  std::vector<AggregateSpec> aggs;
  switch (metric) {
    case TrendMetric::Count:
      aggs.push_back({"", AggFn::Count, "metric"});
      break;
    case TrendMetric::SumCost:
      aggs.push_back({frame.role_column("cost"), AggFn::Sum, "metric"});
      break;
    case TrendMetric::MeanCost:
      aggs.push_back({frame.role_column("cost"), AggFn::Mean, "metric"});
      break;
  }
  Frame grouped = group_aggregate(sliced, {group_field, year_col}, aggs);

  std::map<std::string, std::map<std::int64_t, std::optional<std::int64_t>>> cells;
  const auto& labels = grouped.column(group_field);
  const auto& yrs = grouped.column(year_col);
  const auto& vals = grouped.column("metric");
  for (std::size_t r = 0; r < grouped.row_count(); ++r) {
    if (labels.is_null(r)) continue;
    cells[labels.as_text(r)][yrs.as_int(r)] =
        vals.is_null(r) ? std::optional<std::int64_t>() : vals.as_int(r);
  }

  auto cell = [&](const std::string& label, std::int64_t year) -> std::optional<std::int64_t> {
    auto git = cells.find(label);
    if (git != cells.end()) {
      auto yit = git->second.find(year);
      if (yit != git->second.end()) return yit->second;
    }
    return metric == TrendMetric::MeanCost ? std::optional<std::int64_t>() : std::optional<std::int64_t>(0);
  };

  // rank by final-year metric, absent last, ties ascending label
  std::int64_t final_year = years.back();
  std::vector<std::string> order;
  for (const auto& [label, _] : cells) order.push_back(label);
  std::stable_sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    auto va = cell(a, final_year);
    auto vb = cell(b, final_year);
    if (va.has_value() != vb.has_value()) return va.has_value();
    if (va && vb && *va != *vb) return *va > *vb;
    return a < b;
  });
  if (order.size() > top_k) order.resize(top_k);

  std::vector<TrendSeries> out;
  for (const auto& label : order) {
    TrendSeries s;
    s.group_label = label;
    s.years = years;
    for (auto y : years) s.values.push_back(cell(label, y));
    const auto& first = s.values.front();
    const auto& last = s.values.back();
    if (first && *first > 0 && last)
      s.pct_change_endpoints = percent_change(static_cast<double>(*first), static_cast<double>(*last));
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cost-distribution cap analysis

struct CapReport {
  std::int64_t n = 0;
  Money mean = 0;          // cents, rounded to cent from the exact ratio
  std::optional<double> std_sample;  // cents
  Money threshold = 0;
  double fraction_below = 0.0;  // strict "<"
  Histogram hist;
};

inline CapReport cap_analysis(const Frame& frame, const Predicate& slice, Money threshold,
                              Money hist_lo, Money hist_width, std::size_t hist_k) {
  const auto& cost_col_name = frame.role_column("cost");
  Frame sliced = filter(frame, slice);
  const auto& costs = sliced.column(cost_col_name);
  bool any = false;
  for (std::size_t i = 0; i < costs.size() && !any; ++i) any = !costs.is_null(i);
  if (!any)
    throw Error("empty-cohort", "no rows with a cost value match " + describe_predicate(slice));

  auto st = describe(costs);
  CapReport report;
  report.n = st.n;
  report.mean = *st.mean_cents;
  report.std_sample = st.std_sample;
  report.threshold = threshold;
  report.fraction_below = fraction_below(costs, threshold);
  report.hist = histogram(costs, hist_lo, hist_width, hist_k);
  return report;
}

}  // namespace boat
