#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "boat/error.hpp"

namespace boat {

// Money is integer cents everywhere. Floating point never touches a
// money value until a final statistical division.
using Money = std::int64_t;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Parses "$22,700.00", "30000", "19.5" etc. into cents. Leading "$" and
// grouping commas are stripped; at most two decimal digits are accepted.
inline Money parse_money(std::string_view raw) {
  std::string_view s = detail::trim(raw);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = negative || s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw Error("unparseable-money", "empty value");

  std::int64_t dollars = 0;
  int cents = 0;
  int decimal_digits = -1;  // -1 until we see '.'
  bool any_digit = false;
  for (char c : s) {
    if (c == ',') {
      if (decimal_digits >= 0)
        throw Error("unparseable-money", "comma after decimal point in '" + std::string(raw) + "'");
      continue;
    }
    if (c == '.') {
      if (decimal_digits >= 0)
        throw Error("unparseable-money", "multiple decimal points in '" + std::string(raw) + "'");
      decimal_digits = 0;
      continue;
    }
    if (c < '0' || c > '9')
      throw Error("unparseable-money", "non-numeric character in '" + std::string(raw) + "'");
    any_digit = true;
    if (decimal_digits < 0) {
      dollars = dollars * 10 + (c - '0');
      if (dollars > 100000000000000LL)  // 10^14 dollars, far past any SPARCS cost
        throw Error("unparseable-money", "amount out of range in '" + std::string(raw) + "'");
    } else {
      if (decimal_digits == 2)
        throw Error("unparseable-money", "more than two decimal digits in '" + std::string(raw) + "'");
      cents = cents * 10 + (c - '0');
      ++decimal_digits;
    }
  }
  if (!any_digit) throw Error("unparseable-money", "no digits in '" + std::string(raw) + "'");
  if (decimal_digits == 1) cents *= 10;
  Money value = dollars * 100 + cents;
  if (negative) throw Error("negative-money", "negative amount '" + std::string(raw) + "'");
  return value;
}

// Cents -> plain dollars string with exactly two decimals, e.g. 2270000 -> "22700.00".
inline std::string format_money(Money cents) {
  bool neg = cents < 0;
  std::uint64_t c = neg ? static_cast<std::uint64_t>(-cents) : static_cast<std::uint64_t>(cents);
  std::string out = std::to_string(c / 100);
  std::uint64_t frac = c % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  if (neg) out.insert(out.begin(), '-');
  return out;
}

}  // namespace boat
