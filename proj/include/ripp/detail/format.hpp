#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace ripp::detail {

/// Machine-output number format: 12 significant digits, shortest spelling.
inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

/// Double nearest to the 12-significant-digit decimal spelling of x. Applied
/// to values embedded in JSON reports so serialized precision matches CSV.
inline double round12(double x) {
    return std::strtod(fmt12(x).c_str(), nullptr);
}

}  // namespace ripp::detail
