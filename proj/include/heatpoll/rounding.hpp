#pragma once

#include <algorithm>
#include <cmath>

namespace heatpoll {

// Project-wide rounding convention: half away from zero.
inline int round_half_away(double x) {
    return static_cast<int>(std::llround(x));
}

// Round to one decimal place, half away from zero.
inline double round1(double x) {
    return std::llround(x * 10.0) / 10.0;
}

inline int clamp_int(int x, int lo, int hi) {
    return std::clamp(x, lo, hi);
}

} // namespace heatpoll
