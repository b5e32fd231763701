#pragma once

#include <charconv>
#include <initializer_list>
#include <string>

namespace uavris {

/// Shortest text that parses back to exactly `v`.
inline std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string join_csv(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  return out;
}

}  // namespace uavris
