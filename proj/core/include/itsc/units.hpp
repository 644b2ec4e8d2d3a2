#pragma once

#include <cmath>
#include <cstdint>

namespace itsc {

// Simulation time is integer microseconds end to end: event ordering and
// report arithmetic never depend on float rounding of timestamps.
using TimeUs = std::int64_t;

constexpr TimeUs kMicrosPerSecond = 1'000'000;

inline TimeUs to_us(double seconds)
{
    return static_cast<TimeUs>(std::llround(seconds * 1e6));
}

inline double to_seconds(TimeUs t)
{
    return static_cast<double>(t) / 1e6;
}

}  // namespace itsc
