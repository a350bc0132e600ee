#pragma once

#include <cmath>

namespace athn {

/// Planar coordinates in miles (east, north).
struct GeoPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Euclidean distance in miles.
inline double distance(const GeoPoint& a, const GeoPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Driving time rounded to the nearest minute. speed_mph must be positive.
inline int travel_minutes(const GeoPoint& a, const GeoPoint& b, double speed_mph) {
  return static_cast<int>(std::lround(60.0 * distance(a, b) / speed_mph));
}

}  // namespace athn
