#pragma once

#include <cmath>

namespace scj {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_sq(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(distance_sq(a, b)); }

inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }

}  // namespace scj
