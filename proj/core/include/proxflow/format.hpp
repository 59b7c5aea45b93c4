#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace proxflow {

// shortest decimal form that parses back to the same double
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// strict double parse of a whole token; returns false on trailing junk
inline bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace proxflow
