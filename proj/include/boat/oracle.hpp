#pragma once

// Naive reference implementations used to cross-check the engine. Kept
// deliberately independent: nothing here touches engine.hpp, and every
// computation is a direct nested-loop transcription of its definition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "boat/error.hpp"
#include "boat/frame.hpp"

namespace boat::oracle {

using Cell = std::optional<std::variant<std::int64_t, std::string>>;

struct Table {
  std::vector<std::string> col_names;
  std::vector<std::vector<Cell>> rows;
};

// Row-major view of a frame; plain data movement, no aggregation.
inline Table to_rows(const Frame& frame) {
  Table t;
  t.col_names = frame.column_names();
  t.rows.resize(frame.row_count());
  for (std::size_t r = 0; r < frame.row_count(); ++r) {
    t.rows[r].resize(frame.column_count());
    for (std::size_t c = 0; c < frame.column_count(); ++c) {
      const auto& col = frame.column(c);
      if (col.is_null(r)) continue;
      if (col.type() == ColumnType::Text) t.rows[r][c] = col.as_text(r);
      else if (col.type() == ColumnType::Real) t.rows[r][c] = std::int64_t(0);  // not used by oracles
      else t.rows[r][c] = col.as_int(r);
    }
  }
  return t;
}

inline std::size_t col_index(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.col_names.size(); ++i)
    if (t.col_names[i] == name) return i;
  throw Error("field-not-found", "oracle: no column '" + name + "'");
}

enum class Fn { Sum, Count, CountNull, Mean, Min, Max, StdSample };

struct AggResult {
  std::vector<Cell> key;
  std::int64_t count = 0;       // non-null input values (or rows when no input)
  std::int64_t count_null = 0;
  __int128 sum = 0;
  std::optional<std::int64_t> min;
  std::optional<std::int64_t> max;
  std::optional<double> mean;
  std::optional<double> std_sample;
};

// Nested-loop group-by: for each distinct key tuple (in first-seen
// order) scan the whole table again and fold the requested column.
inline std::vector<AggResult> naive_group_aggregate(const Table& t,
                                                    const std::vector<std::string>& keys,
                                                    const std::string& input_field) {
  std::vector<std::size_t> key_idx;
  for (const auto& k : keys) key_idx.push_back(col_index(t, k));
  std::optional<std::size_t> in_idx;
  if (!input_field.empty()) in_idx = col_index(t, input_field);

  std::vector<std::vector<Cell>> seen;
  std::vector<AggResult> out;
  for (const auto& row : t.rows) {
    std::vector<Cell> key;
    for (auto ki : key_idx) key.push_back(row[ki]);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);

    AggResult res;
    res.key = key;
    std::vector<std::int64_t> values;
    std::int64_t rows_in_group = 0;
    for (const auto& other : t.rows) {
      bool same = true;
      for (std::size_t k = 0; k < key_idx.size(); ++k)
        if (other[key_idx[k]] != key[k]) { same = false; break; }
      if (!same) continue;
      ++rows_in_group;
      if (in_idx) {
        const auto& cell = other[*in_idx];
        if (!cell) ++res.count_null;
        else values.push_back(std::get<std::int64_t>(*cell));
      }
    }
    if (!in_idx) {
      res.count = rows_in_group;
    } else {
      res.count = static_cast<std::int64_t>(values.size());
      for (auto v : values) res.sum += v;
      if (!values.empty()) {
        res.min = *std::min_element(values.begin(), values.end());
        res.max = *std::max_element(values.begin(), values.end());
        res.mean = static_cast<double>(static_cast<long double>(res.sum) / values.size());
      }
      if (values.size() >= 2) {
        // two-pass: mean first, then squared deviations in long double
        long double mean = static_cast<long double>(res.sum) / values.size();
        long double acc = 0;
        for (auto v : values) {
          long double d = static_cast<long double>(v) - mean;
          acc += d * d;
        }
        res.std_sample = static_cast<double>(std::sqrt(acc / (values.size() - 1)));
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

inline std::vector<std::int64_t> non_null(const Table& t, const std::string& field) {
  auto idx = col_index(t, field);
  std::vector<std::int64_t> out;
  for (const auto& row : t.rows)
    if (row[idx]) out.push_back(std::get<std::int64_t>(*row[idx]));
  return out;
}

// sort desc by value, ties asc by first text column then whole row
inline std::vector<std::size_t> naive_top_n(const Table& t, const std::string& value_field,
                                            std::size_t n) {
  auto vi = col_index(t, value_field);
  std::optional<std::size_t> text_idx;
  for (std::size_t c = 0; c < t.col_names.size(); ++c) {
    bool is_text = false;
    for (const auto& row : t.rows)
      if (row[c] && std::holds_alternative<std::string>(*row[c])) { is_text = true; break; }
    if (is_text) { text_idx = c; break; }
  }
  std::vector<std::size_t> idx(t.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto cell_lt = [](const Cell& a, const Cell& b) {
    if (a.has_value() != b.has_value()) return !a.has_value();
    if (!a) return false;
    return *a < *b;
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = t.rows[a];
    const auto& rb = t.rows[b];
    if (ra[vi].has_value() != rb[vi].has_value()) return ra[vi].has_value();
    if (ra[vi] && ra[vi] != rb[vi])
      return std::get<std::int64_t>(*ra[vi]) > std::get<std::int64_t>(*rb[vi]);
    if (text_idx && ra[*text_idx] != rb[*text_idx]) return cell_lt(ra[*text_idx], rb[*text_idx]);
    for (std::size_t c = 0; c < ra.size(); ++c)
      if (ra[c] != rb[c]) return cell_lt(ra[c], rb[c]);
    return false;
  });
  if (idx.size() > n) idx.resize(n);
  return idx;
}

struct NaiveHistogram {
  std::vector<std::int64_t> counts;
  std::int64_t underflow = 0;
  std::int64_t overflow = 0;
};

inline NaiveHistogram naive_histogram(const std::vector<std::int64_t>& values, std::int64_t lo,
                                      std::int64_t width, std::size_t k) {
  NaiveHistogram h;
  h.counts.assign(k, 0);
  for (auto v : values) {
    bool placed = false;
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t left = lo + static_cast<std::int64_t>(i) * width;
      if (v >= left && v < left + width) {
        ++h.counts[i];
        placed = true;
        break;
      }
    }
    if (placed) continue;
    if (v < lo) ++h.underflow;
    else ++h.overflow;
  }
  return h;
}

inline double naive_fraction_below(const std::vector<std::int64_t>& values, std::int64_t threshold) {
  if (values.empty()) throw Error("empty-column", "oracle: no values");
  std::size_t below = 0;
  for (auto v : values)
    if (v < threshold) ++below;
  return static_cast<double>(below) / static_cast<double>(values.size());
}

inline std::int64_t naive_percentile(std::vector<std::int64_t> values, double p) {
  if (values.empty()) throw Error("empty-column", "oracle: no values");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::int64_t>(
      std::ceil(p / 100.0 * static_cast<double>(values.size())));
  if (rank < 1) rank = 1;
  if (rank > static_cast<std::int64_t>(values.size())) rank = static_cast<std::int64_t>(values.size());
  return values[static_cast<std::size_t>(rank - 1)];
}

struct NaiveStats {
  std::int64_t n = 0;
  __int128 sum = 0;
  std::optional<double> mean;
  std::optional<double> std_sample;
};

// classic two-pass mean/std
inline NaiveStats naive_describe(const std::vector<std::int64_t>& values) {
  NaiveStats st;
  st.n = static_cast<std::int64_t>(values.size());
  for (auto v : values) st.sum += v;
  if (!values.empty()) st.mean = static_cast<double>(static_cast<long double>(st.sum) / values.size());
  if (values.size() >= 2) {
    long double mean = static_cast<long double>(st.sum) / values.size();
    long double acc = 0;
    for (auto v : values) {
      long double d = static_cast<long double>(v) - mean;
      acc += d * d;
    }
    st.std_sample = static_cast<double>(std::sqrt(acc / (values.size() - 1)));
  }
  return st;
}

}  // namespace boat::oracle
