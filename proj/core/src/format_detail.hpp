#pragma once

#include <cstdio>
#include <string>

#include "kinfluid/vec.hpp"

namespace kinfluid::detail {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

inline std::string fmt_vec(const Vec& v) {
  return "[" + fmt_double(v[0]) + ", " + fmt_double(v[1]) + ", " + fmt_double(v[2]) + "]";
}

}  // namespace kinfluid::detail
