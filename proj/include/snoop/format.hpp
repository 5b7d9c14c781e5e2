#pragma once

#include <cstdio>
#include <string>

namespace snoop {

/// Probabilities in output files: 6 significant digits.
inline std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    return buf;
}

/// Reals in output files: 10 significant digits, locale-independent.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline std::string format_fixed(double x, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

}  // namespace snoop
