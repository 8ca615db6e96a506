#ifndef LINTS_FORMAT_HPP_
#define LINTS_FORMAT_HPP_

#include <charconv>
#include <string>

namespace lints {

/// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace lints

#endif  // LINTS_FORMAT_HPP_
