#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "boat/error.hpp"

namespace boat {

// Incremental RFC 4180 reader. Handles quoted fields, embedded commas,
// quotes and newlines, and both LF and CRLF line endings. One row is
// materialized at a time; nothing else is retained.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;
    std::string field;
    bool in_quotes = false;
    ++line_;
    while (true) {
      if (c == std::istream::traits_type::eof()) {
        if (in_quotes) throw Error("csv-syntax", "unterminated quote at line " + std::to_string(line_));
        fields.push_back(std::move(field));
        return true;
      }
      char ch = static_cast<char>(c);
      if (in_quotes) {
        if (ch == '"') {
          int peek = in_.peek();
          if (peek == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
      } else if (ch == '"') {
        in_quotes = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (ch == '\r') {
        // swallow; the following '\n' terminates the record
      } else if (ch == '\n') {
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(ch);
      }
      c = in_.get();
    }
  }

  // 1-based line number of the record most recently returned.
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline void write_csv_field(std::ostream& out, const std::string& value) {
  bool needs_quotes = value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_csv_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace boat
