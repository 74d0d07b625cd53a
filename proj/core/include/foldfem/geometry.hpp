#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace foldfem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input or configuration (bad flags, bad mesh parameters, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure (indefinite system, solver budget exceeded, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

using Vec2 = Point;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Point midpoint(Point a, Point b) { return 0.5 * (a + b); }

/// Twice the signed area of (a, b, c); positive for counter-clockwise order.
inline double signed_area2(Point a, Point b, Point c) { return cross(b - a, c - a); }

}  // namespace foldfem
