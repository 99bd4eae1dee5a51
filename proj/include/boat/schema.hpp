#pragma once

#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boat/error.hpp"
#include "boat/frame.hpp"
#include "boat/money.hpp"

namespace boat {

inline constexpr std::array<const char*, 7> kRequiredRoles = {
    "year", "county", "facility", "age_group", "diagnosis", "procedure", "cost"};

struct FieldSpec {
  std::string name;  // exact CSV header
  ColumnType semantic_type = ColumnType::Text;
  std::string role;  // empty if none
  bool nullable = false;
  std::vector<std::string> aliases;  // alternate headers across dataset vintages
};

struct ColumnSchema {
  std::vector<FieldSpec> fields;

  const FieldSpec* field_for_role(const std::string& role) const {
    for (const auto& f : fields)
      if (f.role == role) return &f;
    return nullptr;
  }
};

namespace detail {

inline bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw Error("schema-syntax", "expected boolean at line " + std::to_string(line) + ", got '" + v + "'");
}

inline std::vector<std::string> split_aliases(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(v);
  while (std::getline(ss, cur, '|')) {
    auto t = std::string(trim(cur));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline void validate_schema(const ColumnSchema& schema) {
  std::set<std::string> names;
  std::map<std::string, int> role_counts;
  for (const auto& f : schema.fields) {
    if (f.name.empty()) throw Error("schema-syntax", "field with empty name");
    if (!names.insert(f.name).second)
      throw Error("duplicate-field", "two fields named '" + f.name + "'");
    if (!f.role.empty()) ++role_counts[f.role];
    if (f.semantic_type == ColumnType::Real)
      throw Error("schema-syntax", "field '" + f.name + "': 'real' is not an ingest type");
  }
  for (const char* role : kRequiredRoles) {
    auto it = role_counts.find(role);
    if (it == role_counts.end())
      throw Error("missing-role", std::string("no field bound to role '") + role + "'");
    if (it->second > 1)
      throw Error("duplicate-role", std::string("role '") + role + "' bound to multiple fields");
  }
}

// Parses the declarative schema document: one `[field]` section per
// column, `key = value` lines, `#` comments.
inline ColumnSchema load_schema(const std::string& document) {
  ColumnSchema schema;
  FieldSpec* current = nullptr;
  std::stringstream in(document);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = std::string(detail::trim(raw));
    if (line.empty() || line[0] == '#') continue;
    if (line == "[field]") {
      schema.fields.emplace_back();
      current = &schema.fields.back();
      continue;
    }
    if (line.front() == '[')
      throw Error("schema-syntax", "unknown section '" + line + "' at line " + std::to_string(line_no));
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("schema-syntax", "expected 'key = value' at line " + std::to_string(line_no));
    if (!current)
      throw Error("schema-syntax", "key outside [field] section at line " + std::to_string(line_no));
    auto key = std::string(detail::trim(line.substr(0, eq)));
    auto value = std::string(detail::trim(line.substr(eq + 1)));
    if (key == "name") {
      current->name = value;
    } else if (key == "type") {
      try {
        current->semantic_type = column_type_from_name(value);
      } catch (const Error&) {
        throw Error("schema-syntax", "unknown type '" + value + "' at line " + std::to_string(line_no));
      }
    } else if (key == "role") {
      current->role = value;
    } else if (key == "nullable") {
      current->nullable = detail::parse_bool(value, line_no);
    } else if (key == "aliases") {
      current->aliases = detail::split_aliases(value);
    } else {
      throw Error("schema-syntax", "unknown key '" + key + "' at line " + std::to_string(line_no));
    }
  }
  validate_schema(schema);
  return schema;
}

// The bundled schema for New York SPARCS inpatient discharge extracts.
inline const char* default_schema_text() {
  return R"([field]
name = Discharge Year
type = year
role = year
aliases = Year | Discharge Yr

[field]
name = Hospital County
type = text
role = county
nullable = true

[field]
name = Facility Name
type = text
role = facility
aliases = Facility Nm

[field]
name = Age Group
type = text
role = age_group

[field]
name = CCS Diagnosis Description
type = text
role = diagnosis
aliases = CCS Diagnosis Desc

[field]
name = CCS Procedure Description
type = text
role = procedure
aliases = CCS Procedure Desc

[field]
name = Total Costs
type = money
role = cost
)";
}

inline ColumnSchema default_schema() { return load_schema(default_schema_text()); }

}  // namespace boat
