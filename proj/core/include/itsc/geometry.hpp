#pragma once

#include <cmath>

namespace itsc {

/// 2-D point in meters, origin at the lower-left corner of the area.
struct Point2 {
    double x_m = 0.0;
    double y_m = 0.0;

    friend bool operator==(const Point2& a, const Point2& b) = default;
};

inline double distance_m(const Point2& a, const Point2& b)
{
    const double dx = a.x_m - b.x_m;
    const double dy = a.y_m - b.y_m;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace itsc
