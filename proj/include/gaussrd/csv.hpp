#pragma once

// CSV emission: 12 significant digits, locale-independent, LF line endings.

#include "gaussrd/rate_distortion.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace gaussrd {

inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

inline constexpr const char* kRateCsvHeader = "n_n,r_i,delta,tau,d0,d1,d2";

inline void write_rate_csv(std::ostream& os, const std::vector<RatePoint>& points) {
    os << kRateCsvHeader << '\n';
    for (const RatePoint& p : points) {
        os << format_sig12(p.n_n) << ',' << format_sig12(p.r_i) << ',' << format_sig12(p.delta)
           << ',' << format_sig12(p.tau) << ',' << format_sig12(p.d0) << ','
           << format_sig12(p.d1) << ',' << format_sig12(p.d2) << '\n';
    }
}

}  // namespace gaussrd
