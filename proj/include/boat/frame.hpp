#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "boat/error.hpp"
#include "boat/money.hpp"

namespace boat {

// Semantic column types. Year and Money are int64 underneath; Text is
// dictionary encoded (codes into a per-column dictionary); Real only
// appears in derived frames (means and standard deviations).
enum class ColumnType { Text, Integer, Year, Money, Real };

inline const char* column_type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Text: return "text";
    case ColumnType::Integer: return "integer";
    case ColumnType::Year: return "year";
    case ColumnType::Money: return "money";
    case ColumnType::Real: return "real";
  }
  return "?";
}

inline ColumnType column_type_from_name(const std::string& s) {
  if (s == "text") return ColumnType::Text;
  if (s == "integer") return ColumnType::Integer;
  if (s == "year") return ColumnType::Year;
  if (s == "money") return ColumnType::Money;
  if (s == "real") return ColumnType::Real;
  throw Error("unknown-type", "unknown column type '" + s + "'");
}

class Column {
 public:
  static Column text(std::vector<std::int32_t> codes, std::vector<std::string> dict) {
    Column c;
    c.type_ = ColumnType::Text;
    c.codes_ = std::move(codes);
    c.dict_ = std::move(dict);
    return c;
  }

  static Column numeric(ColumnType type, std::vector<std::int64_t> values,
                        std::vector<std::uint8_t> nulls = {}) {
    Column c;
    c.type_ = type;
    c.ints_ = std::move(values);
    c.nulls_ = std::move(nulls);
    if (c.nulls_.empty()) c.nulls_.assign(c.ints_.size(), 0);
    return c;
  }

  static Column real(std::vector<double> values, std::vector<std::uint8_t> nulls = {}) {
    Column c;
    c.type_ = ColumnType::Real;
    c.reals_ = std::move(values);
    c.nulls_ = std::move(nulls);
    if (c.nulls_.empty()) c.nulls_.assign(c.reals_.size(), 0);
    return c;
  }

  // Convenience for tests and fixtures.
  static Column from_strings(const std::vector<std::string>& values) {
    std::vector<std::int32_t> codes;
    std::vector<std::string> dict;
    std::unordered_map<std::string, std::int32_t> seen;
    codes.reserve(values.size());
    for (const auto& v : values) {
      auto it = seen.find(v);
      if (it == seen.end()) {
        it = seen.emplace(v, static_cast<std::int32_t>(dict.size())).first;
        dict.push_back(v);
      }
      codes.push_back(it->second);
    }
    return text(std::move(codes), std::move(dict));
  }

  ColumnType type() const { return type_; }
  std::size_t size() const {
    return type_ == ColumnType::Text ? codes_.size()
         : type_ == ColumnType::Real ? reals_.size()
                                     : ints_.size();
  }
  bool is_numeric() const {
    return type_ == ColumnType::Integer || type_ == ColumnType::Year || type_ == ColumnType::Money;
  }

  bool is_null(std::size_t i) const {
    if (type_ == ColumnType::Text) return codes_[i] < 0;
    return nulls_[i] != 0;
  }
  std::int64_t as_int(std::size_t i) const { return ints_[i]; }
  double as_real(std::size_t i) const { return reals_[i]; }
  const std::string& as_text(std::size_t i) const { return dict_[static_cast<std::size_t>(codes_[i])]; }
  std::int32_t code(std::size_t i) const { return codes_[i]; }
  const std::vector<std::string>& dict() const { return dict_; }
  const std::vector<std::int64_t>& ints() const { return ints_; }
  const std::vector<double>& reals() const { return reals_; }
  const std::vector<std::int32_t>& codes() const { return codes_; }
  const std::vector<std::uint8_t>& nulls() const { return nulls_; }

  // Row subset in the given index order.
  Column take(const std::vector<std::size_t>& idx) const {
    if (type_ == ColumnType::Text) {
      std::vector<std::int32_t> codes;
      codes.reserve(idx.size());
      for (auto i : idx) codes.push_back(codes_[i]);
      return text(std::move(codes), dict_);
    }
    if (type_ == ColumnType::Real) {
      std::vector<double> v;
      std::vector<std::uint8_t> n;
      v.reserve(idx.size());
      n.reserve(idx.size());
      for (auto i : idx) {
        v.push_back(reals_[i]);
        n.push_back(nulls_[i]);
      }
      return real(std::move(v), std::move(n));
    }
    std::vector<std::int64_t> v;
    std::vector<std::uint8_t> n;
    v.reserve(idx.size());
    n.reserve(idx.size());
    for (auto i : idx) {
      v.push_back(ints_[i]);
      n.push_back(nulls_[i]);
    }
    return numeric(type_, std::move(v), std::move(n));
  }

  std::size_t byte_size() const {
    std::size_t b = ints_.size() * sizeof(std::int64_t) + codes_.size() * sizeof(std::int32_t) +
                    reals_.size() * sizeof(double) + nulls_.size();
    for (const auto& s : dict_) b += s.size() + sizeof(std::uint32_t);
    return b;
  }

  bool operator==(const Column& other) const {
    if (type_ != other.type_ || size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      if (is_null(i) != other.is_null(i)) return false;
      if (is_null(i)) continue;
      if (type_ == ColumnType::Text) {
        if (as_text(i) != other.as_text(i)) return false;
      } else if (type_ == ColumnType::Real) {
        if (std::bit_cast<std::uint64_t>(as_real(i)) != std::bit_cast<std::uint64_t>(other.as_real(i)))
          return false;
      } else {
        if (as_int(i) != other.as_int(i)) return false;
      }
    }
    return true;
  }

 private:
  ColumnType type_ = ColumnType::Integer;
  std::vector<std::int64_t> ints_;
  std::vector<double> reals_;
  std::vector<std::int32_t> codes_;  // Text: -1 encodes null
  std::vector<std::string> dict_;
  std::vector<std::uint8_t> nulls_;  // numeric/real columns
};

// Immutable columnar table. Every engine operation consumes and produces
// frames by value; a frame is safe to share across threads once built.
class Frame {
 public:
  Frame() = default;

  void add_column(std::string name, Column col) {
    if (index_.count(name)) throw Error("duplicate-column", "column '" + name + "' already exists");
    if (!columns_.empty() && col.size() != row_count())
      throw Error("length-mismatch", "column '" + name + "' has wrong length");
    index_.emplace(name, columns_.size());
    names_.push_back(name);
    columns_.push_back(std::move(col));
  }

  std::size_t row_count() const { return columns_.empty() ? 0 : columns_[0].size(); }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }

  bool has_column(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t column_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("field-not-found", "no column named '" + name + "'");
    return it->second;
  }

  const Column& column(const std::string& name) const { return columns_[column_index(name)]; }
  const Column& column(std::size_t i) const { return columns_[i]; }
  const std::string& column_name(std::size_t i) const { return names_[i]; }

  // Role bindings (year, county, facility, age_group, diagnosis,
  // procedure, cost) flow from the ingest schema through snapshots.
  void bind_role(const std::string& role, const std::string& column_name) {
    column_index(column_name);  // validates existence
    roles_[role] = column_name;
  }
  const std::map<std::string, std::string>& roles() const { return roles_; }
  const std::string& role_column(const std::string& role) const {
    auto it = roles_.find(role);
    if (it == roles_.end()) throw Error("role-not-bound", "no column bound to role '" + role + "'");
    return it->second;
  }

  Frame take(const std::vector<std::size_t>& idx) const {
    Frame out;
    for (std::size_t c = 0; c < columns_.size(); ++c) out.add_column(names_[c], columns_[c].take(idx));
    out.roles_ = roles_;
    return out;
  }

  std::size_t byte_size() const {
    std::size_t b = 0;
    for (const auto& c : columns_) b += c.byte_size();
    return b;
  }

  bool operator==(const Frame& other) const {
    if (names_ != other.names_) return false;
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (!(columns_[c] == other.columns_[c])) return false;
    return true;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Column> columns_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::string> roles_;
};

}  // namespace boat
