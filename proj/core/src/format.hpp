#pragma once

#include <charconv>
#include <string>

namespace dqw::detail {

// Shortest round-trip decimal form; identical inputs give identical text.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace dqw::detail
