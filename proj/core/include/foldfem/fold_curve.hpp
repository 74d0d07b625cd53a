#pragma once

#include <functional>
#include <vector>

#include "foldfem/geometry.hpp"

namespace foldfem {

/// A crease given as a graph over one coordinate axis.
///
/// For `Axis::X` the curve is {(s, c(s)) : s in [s_min, s_max]}, for `Axis::Y`
/// it is {(c(s), s)}. Omega_1 is the side where the free coordinate is below
/// c(s), Omega_2 the side above; the crease normal points from Omega_1 into
/// Omega_2. Polyline curves interpolate their breakpoints linearly, smooth
/// curves carry c and c' as callables.
class FoldCurve {
 public:
  enum class Axis { X, Y };
  enum class Kind { Polyline, Smooth };

  static FoldCurve polyline(Axis axis, std::vector<Point> breakpoints);
  static FoldCurve smooth(Axis axis, double s_min, double s_max, std::function<double(double)> c,
                          std::function<double(double)> dc);

  Axis axis() const { return axis_; }
  Kind kind() const { return kind_; }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

  /// Offset of the free coordinate at parameter s.
  double offset(double s) const;
  double slope(double s) const;

  /// Curve point at parameter s.
  Point at(double s) const;
  /// Parameter of p along the graph axis.
  double parameter(Point p) const { return axis_ == Axis::X ? p.x : p.y; }

  /// Signed offset of p from the curve along the free coordinate;
  /// negative in Omega_1, positive in Omega_2.
  double level(Point p) const;
  /// 1 or 2.
  int subdomain(Point p) const { return level(p) < 0.0 ? 1 : 2; }
  /// Direction of increasing level (not normalized); points into Omega_2.
  Vec2 level_gradient(Point p) const;

  /// Closest point on the curve to p, searched near p's own parameter.
  Point project(Point p) const;

  /// Distance from p to the curve measured along the free coordinate.
  double vertical_gap(Point p) const;

 private:
  Axis axis_ = Axis::X;
  Kind kind_ = Kind::Polyline;
  double s_min_ = 0.0;
  double s_max_ = 1.0;
  std::vector<Point> breakpoints_;  // (s, c(s)) pairs for polylines
  std::function<double(double)> c_;
  std::function<double(double)> dc_;

  Point to_xy(double s, double c) const { return axis_ == Axis::X ? Point{s, c} : Point{c, s}; }
};

}  // namespace foldfem
