#pragma once

#include <charconv>
#include <string>

namespace sfcdf::cli {

/// Shortest round-trip decimal representation, the fixed float format of
/// every CSV the tool emits.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

} // namespace sfcdf::cli
