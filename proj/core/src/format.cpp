#include "gwregion/format.hpp"

#include <charconv>
#include <cmath>

namespace gwregion {
namespace {

std::string special(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_number(double v, int digits) {
  if (!std::isfinite(v)) return special(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string format_scientific(double v, int digits) {
  if (!std::isfinite(v)) return special(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits);
  return std::string(buf, res.ptr);
}

}  // namespace gwregion
