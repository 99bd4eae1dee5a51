#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "boat/error.hpp"
#include "boat/frame.hpp"

namespace boat {

using int128 = __int128;

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

// ---------------------------------------------------------------------------
// Filtering

enum class FilterOp { Equals, OneOf, Between };

// One conjunct of a row predicate. Text clauses carry string values,
// numeric clauses int64 values in the column's native unit (cents for
// money).
struct FilterClause {
  std::string field;
  FilterOp op = FilterOp::Equals;
  std::vector<std::string> texts;
  std::vector<std::int64_t> nums;

  static FilterClause eq(std::string field, std::string value) {
    return {std::move(field), FilterOp::Equals, {std::move(value)}, {}};
  }
  static FilterClause eq_num(std::string field, std::int64_t value) {
    return {std::move(field), FilterOp::Equals, {}, {value}};
  }
  static FilterClause one_of(std::string field, std::vector<std::string> values) {
    return {std::move(field), FilterOp::OneOf, std::move(values), {}};
  }
  static FilterClause one_of_num(std::string field, std::vector<std::int64_t> values) {
    return {std::move(field), FilterOp::OneOf, {}, std::move(values)};
  }
  static FilterClause between(std::string field, std::int64_t lo, std::int64_t hi) {
    return {std::move(field), FilterOp::Between, {}, {lo, hi}};
  }

  std::string describe() const {
    std::string out = field;
    switch (op) {
      case FilterOp::Equals:
        out += "=" + (texts.empty() ? std::to_string(nums.at(0)) : texts.at(0));
        break;
      case FilterOp::OneOf: {
        out += " in ";
        bool first = true;
        for (const auto& t : texts) {
          if (!first) out += "|";
          out += t;
          first = false;
        }
        for (auto n : nums) {
          if (!first) out += "|";
          out += std::to_string(n);
          first = false;
        }
        break;
      }
      case FilterOp::Between:
        out += " between " + std::to_string(nums.at(0)) + "," + std::to_string(nums.at(1));
        break;
    }
    return out;
  }
};

using Predicate = std::vector<FilterClause>;

inline std::string describe_predicate(const Predicate& pred) {
  if (pred.empty()) return "(all rows)";
  std::string out;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (i) out += " and ";
    out += pred[i].describe();
  }
  return out;
}

namespace detail {

inline bool clause_matches(const Column& col, const FilterClause& clause, std::size_t row) {
  if (col.type() == ColumnType::Text) {
    if (!clause.nums.empty() || clause.op == FilterOp::Between)
      throw Error("predicate-type", "'" + clause.field + "' is a text column");
    if (col.is_null(row)) return false;
    const auto& v = col.as_text(row);
    for (const auto& t : clause.texts)
      if (t == v) return true;
    return false;
  }
  if (col.type() == ColumnType::Real)
    throw Error("predicate-type", "'" + clause.field + "' is a real column");
  if (!clause.texts.empty())
    throw Error("predicate-type", "'" + clause.field + "' is a numeric column, got text values");
  if (col.is_null(row)) return false;
  auto v = col.as_int(row);
  switch (clause.op) {
    case FilterOp::Equals:
    case FilterOp::OneOf:
      for (auto n : clause.nums)
        if (n == v) return true;
      return false;
    case FilterOp::Between:
      if (clause.nums.size() != 2) throw Error("predicate-type", "between needs two bounds");
      return v >= clause.nums[0] && v <= clause.nums[1];
  }
  return false;
}

}  // namespace detail

// Rows satisfying every clause, input order preserved. Null cells never
// match.
inline Frame filter(const Frame& frame, const Predicate& pred) {
  std::vector<const Column*> cols;
  cols.reserve(pred.size());
  for (const auto& clause : pred) {
    const auto& col = frame.column(clause.field);
    if (col.type() == ColumnType::Text) {
      if (clause.op == FilterOp::Between || !clause.nums.empty())
        throw Error("predicate-type", "'" + clause.field + "' is a text column");
    } else if (col.type() == ColumnType::Real) {
      throw Error("predicate-type", "'" + clause.field + "' is a real column");
    } else if (!clause.texts.empty()) {
      throw Error("predicate-type", "'" + clause.field + "' is a numeric column, got text values");
    }
    cols.push_back(&col);
  }
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < frame.row_count(); ++r) {
    bool ok = true;
    for (std::size_t c = 0; c < pred.size(); ++c) {
      if (!detail::clause_matches(*cols[c], pred[c], r)) {
        ok = false;
        break;
      }
    }
    if (ok) keep.push_back(r);
  }
  return frame.take(keep);
}

// ---------------------------------------------------------------------------
// Aggregation

enum class AggFn { Sum, Count, CountNull, Mean, Min, Max, StdSample };

struct AggregateSpec {
  std::string input_field;  // empty only for row-count
  AggFn function = AggFn::Count;
  std::string output_name;
};

namespace detail {

struct NumericAcc {
  int128 sum = 0;
  int128 sum_sq = 0;
  std::int64_t count = 0;       // non-null values
  std::int64_t count_null = 0;
  std::int64_t rows = 0;
  std::int64_t min = std::numeric_limits<std::int64_t>::max();
  std::int64_t max = std::numeric_limits<std::int64_t>::min();

  void add_value(std::int64_t v) {
    sum += v;
    sum_sq += static_cast<int128>(v) * v;
    ++count;
    min = std::min(min, v);
    max = std::max(max, v);
  }
  void merge(const NumericAcc& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
    count_null += o.count_null;
    rows += o.rows;
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }
};

struct GroupKey {
  std::vector<std::int64_t> vals;
  std::vector<std::uint8_t> nulls;
  bool operator==(const GroupKey& o) const { return vals == o.vals && nulls == o.nulls; }
};

struct GroupKeyHash {
  std::size_t operator()(const GroupKey& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    for (std::size_t i = 0; i < k.vals.size(); ++i) {
      mix(static_cast<std::uint64_t>(k.vals[i]));
      mix(k.nulls[i]);
    }
    return h;
  }
};

// Round-half-away-from-zero division of an exact sum; used for money
// means at cent precision.
inline std::int64_t rounded_div(int128 num, std::int64_t den) {
  bool neg = num < 0;
  unsigned __int128 n = neg ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
  unsigned __int128 q = (2 * n + static_cast<unsigned __int128>(den)) / (2 * static_cast<unsigned __int128>(den));
  auto r = static_cast<std::int64_t>(q);
  return neg ? -r : r;
}

inline double sample_std(const NumericAcc& a) {
  // exact integer n*Σx² - (Σx)², real arithmetic only at the end
  int128 num = static_cast<int128>(a.count) * a.sum_sq - a.sum * a.sum;
  long double var = static_cast<long double>(num) /
                    (static_cast<long double>(a.count) * static_cast<long double>(a.count - 1));
  return static_cast<double>(std::sqrt(var));
}

}  // namespace detail

// Hash aggregation with exact integer accumulators. Partials built on
// disjoint row partitions merge to a bit-identical result because every
// accumulator is an exact integer. Output rows are sorted ascending by
// key tuple (nulls first, text by value).
class GroupAggregator {
 public:
  GroupAggregator(std::vector<std::string> keys, std::vector<AggregateSpec> aggs)
      : keys_(std::move(keys)), aggs_(std::move(aggs)) {
    key_dicts_.resize(keys_.size());
    key_dict_index_.resize(keys_.size());
    key_types_.assign(keys_.size(), ColumnType::Integer);
    key_types_known_.assign(keys_.size(), false);
  }

  void add(const Frame& frame) {
    std::vector<const Column*> key_cols;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      const auto& col = frame.column(keys_[k]);
      if (col.type() == ColumnType::Real)
        throw Error("predicate-type", "cannot group by real column '" + keys_[k] + "'");
      if (key_types_known_[k] && key_types_[k] != col.type())
        throw Error("predicate-type", "key column '" + keys_[k] + "' changed type across partitions");
      key_types_[k] = col.type();
      key_types_known_[k] = true;
      key_cols.push_back(&col);
    }
    std::vector<const Column*> agg_cols(aggs_.size(), nullptr);
    for (std::size_t a = 0; a < aggs_.size(); ++a) {
      if (aggs_[a].input_field.empty()) {
        if (aggs_[a].function != AggFn::Count)
          throw Error("aggregate-on-text", "aggregate '" + aggs_[a].output_name + "' needs an input field");
        continue;
      }
      const auto& col = frame.column(aggs_[a].input_field);
      if (!col.is_numeric())
        throw Error("aggregate-on-text",
                    "cannot aggregate non-numeric column '" + aggs_[a].input_field + "'");
      agg_cols[a] = &col;
      input_types_[aggs_[a].input_field] = col.type();
    }

    // frame-local text code -> aggregator-global dictionary id
    std::vector<std::vector<std::int64_t>> code_map(keys_.size());
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (key_cols[k]->type() != ColumnType::Text) continue;
      const auto& dict = key_cols[k]->dict();
      code_map[k].resize(dict.size());
      for (std::size_t c = 0; c < dict.size(); ++c) code_map[k][c] = intern(k, dict[c]);
    }

    detail::GroupKey key;
    key.vals.resize(keys_.size());
    key.nulls.resize(keys_.size());
    for (std::size_t r = 0; r < frame.row_count(); ++r) {
      for (std::size_t k = 0; k < keys_.size(); ++k) {
        if (key_cols[k]->is_null(r)) {
          key.nulls[k] = 1;
          key.vals[k] = 0;
        } else {
          key.nulls[k] = 0;
          key.vals[k] = key_cols[k]->type() == ColumnType::Text
                            ? code_map[k][static_cast<std::size_t>(key_cols[k]->code(r))]
                            : key_cols[k]->as_int(r);
        }
      }
      auto it = groups_.find(key);
      if (it == groups_.end())
        it = groups_.emplace(key, std::vector<detail::NumericAcc>(aggs_.size())).first;
      auto& accs = it->second;
      for (std::size_t a = 0; a < aggs_.size(); ++a) {
        auto& acc = accs[a];
        ++acc.rows;
        if (!agg_cols[a]) continue;
        if (agg_cols[a]->is_null(r)) {
          ++acc.count_null;
        } else {
          acc.add_value(agg_cols[a]->as_int(r));
        }
      }
    }
  }

  void merge(const GroupAggregator& other) {
    for (const auto& [name, type] : other.input_types_) input_types_[name] = type;
    detail::GroupKey key;
    for (const auto& [okey, oaccs] : other.groups_) {
      key = okey;
      for (std::size_t k = 0; k < keys_.size(); ++k) {
        if (!key.nulls[k] && other.key_types_[k] == ColumnType::Text)
          key.vals[k] = intern(k, other.key_dicts_[k][static_cast<std::size_t>(okey.vals[k])]);
        if (other.key_types_known_[k]) {
          key_types_[k] = other.key_types_[k];
          key_types_known_[k] = true;
        }
      }
      auto it = groups_.find(key);
      if (it == groups_.end()) {
        groups_.emplace(key, oaccs);
      } else {
        for (std::size_t a = 0; a < aggs_.size(); ++a) it->second[a].merge(oaccs[a]);
      }
    }
  }

  Frame finish() const {
    std::vector<const detail::GroupKey*> order;
    order.reserve(groups_.size());
    for (const auto& kv : groups_) order.push_back(&kv.first);
    std::sort(order.begin(), order.end(), [this](const detail::GroupKey* a, const detail::GroupKey* b) {
      for (std::size_t k = 0; k < keys_.size(); ++k) {
        if (a->nulls[k] != b->nulls[k]) return a->nulls[k] > b->nulls[k];  // nulls first
        if (a->nulls[k]) continue;
        if (key_types_[k] == ColumnType::Text) {
          const auto& sa = key_dicts_[k][static_cast<std::size_t>(a->vals[k])];
          const auto& sb = key_dicts_[k][static_cast<std::size_t>(b->vals[k])];
          if (sa != sb) return sa < sb;
        } else if (a->vals[k] != b->vals[k]) {
          return a->vals[k] < b->vals[k];
        }
      }
      return false;
    });

    Frame out;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (key_types_[k] == ColumnType::Text) {
        std::vector<std::int32_t> codes;
        std::vector<std::string> dict;
        std::unordered_map<std::string, std::int32_t> seen;
        for (const auto* g : order) {
          if (g->nulls[k]) {
            codes.push_back(-1);
            continue;
          }
          const auto& s = key_dicts_[k][static_cast<std::size_t>(g->vals[k])];
          auto it = seen.find(s);
          if (it == seen.end()) {
            it = seen.emplace(s, static_cast<std::int32_t>(dict.size())).first;
            dict.push_back(s);
          }
          codes.push_back(it->second);
        }
        out.add_column(keys_[k], Column::text(std::move(codes), std::move(dict)));
      } else {
        std::vector<std::int64_t> vals;
        std::vector<std::uint8_t> nulls;
        for (const auto* g : order) {
          vals.push_back(g->vals[k]);
          nulls.push_back(g->nulls[k]);
        }
        out.add_column(keys_[k], Column::numeric(key_types_[k], std::move(vals), std::move(nulls)));
      }
    }

    for (std::size_t a = 0; a < aggs_.size(); ++a) {
      const auto& spec = aggs_[a];
      ColumnType in_type = agg_input_type(spec);
      std::vector<std::int64_t> ints;
      std::vector<double> reals;
      std::vector<std::uint8_t> nulls;
      ColumnType out_type = output_type(spec, in_type);
      for (const auto* g : order) {
        const auto& acc = groups_.at(*g)[a];
        bool null = false;
        std::int64_t iv = 0;
        double rv = 0;
        switch (spec.function) {
          case AggFn::Count:
            iv = spec.input_field.empty() ? acc.rows : acc.count;
            break;
          case AggFn::CountNull:
            iv = acc.count_null;
            break;
          case AggFn::Sum:
            iv = static_cast<std::int64_t>(acc.sum);
            break;
          case AggFn::Min:
            if (acc.count == 0) null = true;
            else iv = acc.min;
            break;
          case AggFn::Max:
            if (acc.count == 0) null = true;
            else iv = acc.max;
            break;
          case AggFn::Mean:
            if (acc.count == 0) {
              null = true;
            } else if (out_type == ColumnType::Money) {
              iv = detail::rounded_div(acc.sum, acc.count);
            } else {
              rv = static_cast<double>(static_cast<long double>(acc.sum) / acc.count);
            }
            break;
          case AggFn::StdSample:
            if (acc.count < 2) null = true;
            else rv = detail::sample_std(acc);
            break;
        }
        nulls.push_back(null ? 1 : 0);
        if (out_type == ColumnType::Real) reals.push_back(null ? 0.0 : rv);
        else ints.push_back(null ? 0 : iv);
      }
      if (out_type == ColumnType::Real)
        out.add_column(spec.output_name, Column::real(std::move(reals), std::move(nulls)));
      else
        out.add_column(spec.output_name, Column::numeric(out_type, std::move(ints), std::move(nulls)));
    }
    return out;
  }

 private:
  std::int64_t intern(std::size_t k, const std::string& s) {
    auto it = key_dict_index_[k].find(s);
    if (it == key_dict_index_[k].end()) {
      it = key_dict_index_[k].emplace(s, static_cast<std::int64_t>(key_dicts_[k].size())).first;
      key_dicts_[k].push_back(s);
    }
    return it->second;
  }

  ColumnType agg_input_type(const AggregateSpec& spec) const {
    auto it = input_types_.find(spec.input_field);
    return it == input_types_.end() ? ColumnType::Integer : it->second;
  }

  static ColumnType output_type(const AggregateSpec& spec, ColumnType in_type) {
    switch (spec.function) {
      case AggFn::Count:
      case AggFn::CountNull:
        return ColumnType::Integer;
      case AggFn::Sum:
      case AggFn::Min:
      case AggFn::Max:
        return in_type == ColumnType::Money ? ColumnType::Money : ColumnType::Integer;
      case AggFn::Mean:
        return in_type == ColumnType::Money ? ColumnType::Money : ColumnType::Real;
      case AggFn::StdSample:
        return ColumnType::Real;
    }
    return ColumnType::Integer;
  }

  std::vector<std::string> keys_;
  std::vector<AggregateSpec> aggs_;
  std::vector<ColumnType> key_types_;
  std::vector<bool> key_types_known_;
  std::vector<std::vector<std::string>> key_dicts_;
  std::vector<std::unordered_map<std::string, std::int64_t>> key_dict_index_;
  std::unordered_map<std::string, ColumnType> input_types_;
  std::unordered_map<detail::GroupKey, std::vector<detail::NumericAcc>, detail::GroupKeyHash> groups_;
};

inline Frame group_aggregate(const Frame& frame, const std::vector<std::string>& keys,
                             const std::vector<AggregateSpec>& aggs) {
  GroupAggregator agg(keys, aggs);
  agg.add(frame);
  return agg.finish();
}

// ---------------------------------------------------------------------------
// Sorting and ranking

enum class SortOrder { Ascending, Descending };

inline Frame sort_by(const Frame& frame, const std::string& key, SortOrder order) {
  const auto& col = frame.column(key);
  std::vector<std::size_t> idx(frame.row_count());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto less = [&col](std::size_t a, std::size_t b) {
    bool na = col.is_null(a), nb = col.is_null(b);
    if (na != nb) return na;  // nulls first ascending
    if (na) return false;
    if (col.type() == ColumnType::Text) return col.as_text(a) < col.as_text(b);
    if (col.type() == ColumnType::Real) return col.as_real(a) < col.as_real(b);
    return col.as_int(a) < col.as_int(b);
  };
  if (order == SortOrder::Ascending) {
    std::stable_sort(idx.begin(), idx.end(), less);
  } else {
    std::stable_sort(idx.begin(), idx.end(), [&less](std::size_t a, std::size_t b) { return less(b, a); });
  }
  return frame.take(idx);
}

// The n rows with the largest values, descending. Ties break ascending
// on the first text column, then on the full row, so the result is a
// function of the row set alone.
inline Frame top_n(const Frame& frame, const std::string& value_field, std::size_t n) {
  const auto& col = frame.column(value_field);
  if (!col.is_numeric())
    throw Error("aggregate-on-text", "top_n needs a numeric column, '" + value_field + "' is not");

  std::size_t first_text = frame.column_count();
  for (std::size_t c = 0; c < frame.column_count(); ++c) {
    if (frame.column(c).type() == ColumnType::Text) {
      first_text = c;
      break;
    }
  }

  auto cell_less = [&frame](std::size_t c, std::size_t a, std::size_t b) -> int {
    const auto& cc = frame.column(c);
    bool na = cc.is_null(a), nb = cc.is_null(b);
    if (na != nb) return na ? -1 : 1;
    if (na) return 0;
    if (cc.type() == ColumnType::Text) {
      const auto& sa = cc.as_text(a);
      const auto& sb = cc.as_text(b);
      return sa < sb ? -1 : (sb < sa ? 1 : 0);
    }
    if (cc.type() == ColumnType::Real) {
      double ra = cc.as_real(a), rb = cc.as_real(b);
      return ra < rb ? -1 : (rb < ra ? 1 : 0);
    }
    auto ia = cc.as_int(a), ib = cc.as_int(b);
    return ia < ib ? -1 : (ib < ia ? 1 : 0);
  };

  std::vector<std::size_t> idx(frame.row_count());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    // nulls sort last so they never enter a top-n of non-null values
    bool na = col.is_null(a), nb = col.is_null(b);
    if (na != nb) return nb;
    if (!na) {
      auto va = col.as_int(a), vb = col.as_int(b);
      if (va != vb) return va > vb;
    }
    if (first_text < frame.column_count()) {
      int c = cell_less(first_text, a, b);
      if (c != 0) return c < 0;
    }
    for (std::size_t c = 0; c < frame.column_count(); ++c) {
      int cmp = cell_less(c, a, b);
      if (cmp != 0) return cmp < 0;
    }
    return false;
  });
  if (idx.size() > n) idx.resize(n);
  return frame.take(idx);
}

// ---------------------------------------------------------------------------
// Descriptive statistics

struct Stats {
  std::int64_t n = 0;
  int128 sum = 0;
  std::optional<double> mean;               // exact ratio, evaluated once
  std::optional<std::int64_t> mean_cents;   // money columns: rounded to cent
  std::optional<double> std_sample;         // n >= 2 only
  std::optional<std::int64_t> min;
  std::optional<std::int64_t> max;
  std::optional<std::int64_t> median;       // lower-middle for even n
};

namespace detail {

inline std::vector<std::int64_t> non_null_values(const Column& col) {
  if (!col.is_numeric())
    throw Error("aggregate-on-text", "statistics need a numeric column");
  std::vector<std::int64_t> out;
  out.reserve(col.size());
  for (std::size_t i = 0; i < col.size(); ++i)
    if (!col.is_null(i)) out.push_back(col.as_int(i));
  return out;
}

}  // namespace detail

inline Stats describe(const Column& col) {
  Stats st;
  detail::NumericAcc acc;
  if (!col.is_numeric())
    throw Error("aggregate-on-text", "describe needs a numeric column");
  auto values = detail::non_null_values(col);
  for (auto v : values) acc.add_value(v);
  st.n = acc.count;
  st.sum = acc.sum;
  if (acc.count >= 1) {
    st.mean = static_cast<double>(static_cast<long double>(acc.sum) / acc.count);
    st.mean_cents = detail::rounded_div(acc.sum, acc.count);
    st.min = acc.min;
    st.max = acc.max;
    auto sorted = values;
    std::nth_element(sorted.begin(), sorted.begin() + (sorted.size() - 1) / 2, sorted.end());
    st.median = sorted[(sorted.size() - 1) / 2];
  }
  if (acc.count >= 2) st.std_sample = detail::sample_std(acc);
  return st;
}

struct Histogram {
  std::int64_t lo = 0;
  std::int64_t bin_width = 1;
  std::vector<std::int64_t> counts;
  std::int64_t underflow = 0;
  std::int64_t overflow = 0;

  std::int64_t total_mass() const {
    std::int64_t t = underflow + overflow;
    for (auto c : counts) t += c;
    return t;
  }
  bool operator==(const Histogram&) const = default;
};

// Fixed-width bins, bin i covering [lo + i*w, lo + (i+1)*w). Values
// below lo land in underflow, values at or past the last edge in
// overflow. Nulls are skipped.
inline Histogram histogram(const Column& col, std::int64_t lo, std::int64_t bin_width, std::size_t k) {
  if (bin_width <= 0) throw Error("nonpositive-bin-width", "bin width must be > 0");
  if (k == 0) throw Error("invalid-bin-count", "need at least one bin");
  Histogram h;
  h.lo = lo;
  h.bin_width = bin_width;
  h.counts.assign(k, 0);
  for (auto v : detail::non_null_values(col)) {
    if (v < lo) {
      ++h.underflow;
      continue;
    }
    auto bin = static_cast<std::uint64_t>(v - lo) / static_cast<std::uint64_t>(bin_width);
    if (bin >= k) ++h.overflow;
    else ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

// Strict "less than" fraction, per cap semantics.
inline double fraction_below(const Column& col, std::int64_t threshold) {
  auto values = detail::non_null_values(col);
  if (values.empty()) throw Error("empty-column", "fraction_below needs at least one value");
  std::size_t below = 0;
  for (auto v : values)
    if (v < threshold) ++below;
  return static_cast<double>(below) / static_cast<double>(values.size());
}

// Nearest-rank percentile: the element at 1-based index ceil(p/100 * n)
// of the sorted column; p = 0 yields the minimum.
inline std::int64_t percentile(const Column& col, double p) {
  if (p < 0.0 || p > 100.0) throw Error("invalid-percentile", "p must be in [0, 100]");
  auto values = detail::non_null_values(col);
  if (values.empty()) throw Error("empty-column", "percentile needs at least one value");
  std::sort(values.begin(), values.end());
  auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  if (rank < 1) rank = 1;
  if (rank > values.size()) rank = values.size();
  return values[rank - 1];
}

}  // namespace boat
