#pragma once

#include <cstdio>
#include <string>

namespace aoisim {

/// Locale-independent "%.*g" formatting, 12 significant digits by default.
inline std::string fmt_g(double x, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

}  // namespace aoisim
