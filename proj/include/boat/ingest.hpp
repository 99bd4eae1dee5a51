#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "boat/csv.hpp"
#include "boat/error.hpp"
#include "boat/frame.hpp"
#include "boat/money.hpp"
#include "boat/schema.hpp"

namespace boat {

constexpr std::int64_t kMinYear = 1990;
constexpr std::int64_t kMaxYear = 2100;

struct ParseError {
  std::size_t line;
  std::string field;
  std::string raw_value;
};

struct ParseReport {
  std::size_t rows_read = 0;
  std::size_t rows_ok = 0;
  std::size_t rows_quarantined = 0;
  std::map<std::string, std::size_t> errors_by_field;
  std::vector<ParseError> first_errors;  // capped at 20 samples

  static constexpr std::size_t kMaxSamples = 20;
};

namespace detail {

inline std::optional<std::int64_t> parse_int(std::string_view raw) {
  auto s = trim(raw);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Mutable column under construction; frozen into a Column at the end.
struct ColumnBuilder {
  ColumnType type;
  std::vector<std::int64_t> ints;
  std::vector<std::uint8_t> nulls;
  std::vector<std::int32_t> codes;
  std::vector<std::string> dict;
  std::unordered_map<std::string, std::int32_t> dict_index;

  void push_text(const std::string& v) {
    auto it = dict_index.find(v);
    if (it == dict_index.end()) {
      it = dict_index.emplace(v, static_cast<std::int32_t>(dict.size())).first;
      dict.push_back(v);
    }
    codes.push_back(it->second);
  }
  void push_null() {
    if (type == ColumnType::Text) {
      codes.push_back(-1);
    } else {
      ints.push_back(0);
      nulls.push_back(1);
    }
  }
  void push_int(std::int64_t v) {
    ints.push_back(v);
    nulls.push_back(0);
  }
  void pop() {
    if (type == ColumnType::Text) {
      codes.pop_back();
    } else {
      ints.pop_back();
      nulls.pop_back();
    }
  }
  std::size_t size() const { return type == ColumnType::Text ? codes.size() : ints.size(); }

  Column freeze() && {
    if (type == ColumnType::Text) return Column::text(std::move(codes), std::move(dict));
    return Column::numeric(type, std::move(ints), std::move(nulls));
  }
};

}  // namespace detail

// Streams a SPARCS-style CSV into a typed frame. Rows whose required
// fields fail coercion are quarantined and reported, never retained.
// The header must contain every schema field (by name or alias); extra
// columns pass through as text.
inline std::pair<Frame, ParseReport> parse_stream(const ColumnSchema& schema, std::istream& input) {
  validate_schema(schema);
  CsvReader reader(input);
  std::vector<std::string> header;
  if (!reader.next(header)) throw Error("header-mismatch", "input is empty, no header row");

  std::unordered_map<std::string, std::size_t> header_index;
  for (std::size_t i = 0; i < header.size(); ++i) header_index.emplace(header[i], i);

  // schema field -> position in the CSV
  std::vector<std::size_t> field_pos(schema.fields.size());
  std::vector<bool> column_is_schema(header.size(), false);
  for (std::size_t f = 0; f < schema.fields.size(); ++f) {
    const auto& spec = schema.fields[f];
    auto it = header_index.find(spec.name);
    if (it == header_index.end()) {
      for (const auto& alias : spec.aliases) {
        it = header_index.find(alias);
        if (it != header_index.end()) break;
      }
    }
    if (it == header_index.end())
      throw Error("header-mismatch", "header is missing column '" + spec.name + "'");
    field_pos[f] = it->second;
    column_is_schema[it->second] = true;
  }

  std::vector<detail::ColumnBuilder> builders(schema.fields.size());
  std::vector<std::string> builder_names;
  for (std::size_t f = 0; f < schema.fields.size(); ++f) {
    builders[f].type = schema.fields[f].semantic_type;
    builder_names.push_back(schema.fields[f].name);
  }
  // Pass-through columns keep their header names and input order.
  std::vector<std::size_t> extra_pos;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!column_is_schema[i]) {
      extra_pos.push_back(i);
      builders.emplace_back();
      builders.back().type = ColumnType::Text;
      builder_names.push_back(header[i]);
    }
  }

  ParseReport report;
  std::vector<std::string> row;
  std::vector<std::pair<std::size_t, std::string>> row_errors;  // (field index, raw value)
  while (reader.next(row)) {
    ++report.rows_read;
    row_errors.clear();
    for (std::size_t f = 0; f < schema.fields.size(); ++f) {
      const auto& spec = schema.fields[f];
      auto& b = builders[f];
      const std::string raw = field_pos[f] < row.size() ? row[field_pos[f]] : std::string();
      const auto trimmed = std::string(detail::trim(raw));
      bool ok = true;
      switch (spec.semantic_type) {
        case ColumnType::Text:
          if (trimmed.empty() && spec.nullable) {
            b.push_null();
          } else {
            b.push_text(raw);
          }
          break;
        case ColumnType::Integer:
        case ColumnType::Year: {
          if (trimmed.empty()) {
            if (spec.nullable) {
              b.push_null();
            } else {
              ok = false;
            }
          } else if (auto v = detail::parse_int(trimmed)) {
            if (spec.semantic_type == ColumnType::Year && (*v < kMinYear || *v > kMaxYear)) {
              ok = false;
            } else {
              b.push_int(*v);
            }
          } else {
            ok = false;
          }
          break;
        }
        case ColumnType::Money: {
          if (trimmed.empty()) {
            if (spec.nullable) {
              b.push_null();
            } else {
              ok = false;
            }
          } else {
            try {
              b.push_int(parse_money(trimmed));
            } catch (const Error&) {
              ok = false;
            }
          }
          break;
        }
        case ColumnType::Real:
          ok = false;  // rejected by validate_schema
          break;
      }
      if (!ok) row_errors.emplace_back(f, raw);
    }
    if (row_errors.empty()) {
      for (std::size_t e = 0; e < extra_pos.size(); ++e) {
        builders[schema.fields.size() + e].push_text(
            extra_pos[e] < row.size() ? row[extra_pos[e]] : std::string());
      }
      ++report.rows_ok;
    } else {
      // roll back the values already appended for this row
      for (std::size_t f = 0; f < schema.fields.size(); ++f) {
        if (builders[f].size() > report.rows_ok) {
          builders[f].pop();
        }
      }
      ++report.rows_quarantined;
      for (const auto& [f, raw] : row_errors) {
        ++report.errors_by_field[schema.fields[f].name];
        if (report.first_errors.size() < ParseReport::kMaxSamples)
          report.first_errors.push_back({reader.line(), schema.fields[f].name, raw});
      }
    }
  }

  Frame frame;
  for (std::size_t i = 0; i < builders.size(); ++i)
    frame.add_column(builder_names[i], std::move(builders[i]).freeze());
  for (std::size_t f = 0; f < schema.fields.size(); ++f)
    if (!schema.fields[f].role.empty()) frame.bind_role(schema.fields[f].role, schema.fields[f].name);
  return {std::move(frame), std::move(report)};
}

}  // namespace boat
