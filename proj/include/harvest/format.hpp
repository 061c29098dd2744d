#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace harvest {

// Every number leaving the program goes through here: 12 significant digits.
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Round to 12 significant digits, for JSON output where the number type is kept.
inline double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return std::strtod(buf, nullptr);
}

}  // namespace harvest
