#pragma once

#include <cstdio>
#include <string>

namespace llg {

/// Round-trip-exact float formatting for all CSV output.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace llg
