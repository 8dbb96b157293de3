#pragma once

#include <cstdio>
#include <string>

namespace naqs {

/// Round-trip-exact decimal form of a double (17 significant digits);
/// output files compare by bytes, so every number goes through this.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace naqs
