#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "ccdeg/types.hpp"

namespace ccdeg {

// Locale-independent round-trip formatting: shortest decimal string
// that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

// Strict full-token parse; throws precondition_error with the offending
// text on failure.
inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw precondition_error("not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline long parse_long(std::string_view text) {
  long value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw precondition_error("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ccdeg
