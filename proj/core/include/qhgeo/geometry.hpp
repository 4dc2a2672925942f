#pragma once

#include <cmath>

namespace qhgeo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

// sqrt of the sum of squares rather than hypot: exact under power-of-two scaling.
inline double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// Distance from p to the closed segment [a, b].
inline double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return distance(p, a + t * ab);
}

struct Box {
  Point2 lo;
  Point2 hi;
};

}  // namespace qhgeo
