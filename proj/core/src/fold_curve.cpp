#include "foldfem/fold_curve.hpp"

#include <algorithm>
#include <limits>

namespace foldfem {

FoldCurve FoldCurve::polyline(Axis axis, std::vector<Point> breakpoints) {
  if (breakpoints.size() < 2) throw ConfigError("fold polyline needs at least two breakpoints");
  FoldCurve curve;
  curve.axis_ = axis;
  curve.kind_ = Kind::Polyline;
  // Store as (s, c(s)) regardless of axis.
  for (auto& p : breakpoints) {
    if (axis == Axis::Y) std::swap(p.x, p.y);
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end(),
                      [](Point a, Point b) { return a.x < b.x; }))
    throw ConfigError("fold polyline breakpoints must be ordered along the graph axis");
  curve.s_min_ = breakpoints.front().x;
  curve.s_max_ = breakpoints.back().x;
  curve.breakpoints_ = std::move(breakpoints);
  return curve;
}

FoldCurve FoldCurve::smooth(Axis axis, double s_min, double s_max, std::function<double(double)> c,
                            std::function<double(double)> dc) {
  if (!(s_min < s_max)) throw ConfigError("fold parameter interval is empty");
  FoldCurve curve;
  curve.axis_ = axis;
  curve.kind_ = Kind::Smooth;
  curve.s_min_ = s_min;
  curve.s_max_ = s_max;
  curve.c_ = std::move(c);
  curve.dc_ = std::move(dc);
  return curve;
}

double FoldCurve::offset(double s) const {
  s = std::clamp(s, s_min_, s_max_);
  if (kind_ == Kind::Smooth) return c_(s);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s,
                             [](double v, Point p) { return v < p.x; });
  if (it == breakpoints_.begin()) return breakpoints_.front().y;
  if (it == breakpoints_.end()) return breakpoints_.back().y;
  const Point b = *it;
  const Point a = *(it - 1);
  const double t = (s - a.x) / (b.x - a.x);
  // Evaluate exactly at the breakpoints so fitted vertices land on the curve bit-for-bit.
  if (t == 0.0) return a.y;
  return a.y + t * (b.y - a.y);
}

double FoldCurve::slope(double s) const {
  s = std::clamp(s, s_min_, s_max_);
  if (kind_ == Kind::Smooth) return dc_(s);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s,
                             [](double v, Point p) { return v < p.x; });
  if (it == breakpoints_.begin()) ++it;
  if (it == breakpoints_.end()) --it;
  const Point b = *it;
  const Point a = *(it - 1);
  return (b.y - a.y) / (b.x - a.x);
}

Point FoldCurve::at(double s) const { return to_xy(s, offset(s)); }

double FoldCurve::level(Point p) const {
  const double s = parameter(p);
  const double free = axis_ == Axis::X ? p.y : p.x;
  return free - offset(s);
}

Vec2 FoldCurve::level_gradient(Point p) const {
  const double ds = -slope(parameter(p));
  return axis_ == Axis::X ? Vec2{ds, 1.0} : Vec2{1.0, ds};
}

double FoldCurve::vertical_gap(Point p) const { return std::abs(level(p)); }

Point FoldCurve::project(Point p) const {
  const double ps = parameter(p);
  const double pc = axis_ == Axis::X ? p.y : p.x;

  if (kind_ == Kind::Polyline) {
    Point best{};
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
      const Point a = breakpoints_[i];
      const Point b = breakpoints_[i + 1];
      const Vec2 ab = b - a;
      double t = dot(Point{ps, pc} - a, ab) / dot(ab, ab);
      t = std::clamp(t, 0.0, 1.0);
      // Snap to breakpoints exactly when the foot is at an end.
      const Point q = t == 0.0 ? a : (t == 1.0 ? b : a + t * ab);
      const Vec2 d = q - Point{ps, pc};
      const double d2 = dot(d, d);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = q;
      }
    }
    // A foot exactly on the graph line keeps its parameter; the offset is
    // then re-evaluated so the result satisfies level() == 0 exactly.
    return to_xy(best.x, offset(best.x));
  }

  // Gauss-Newton on the squared distance; the foot is close to ps for the
  // midpoints of short chords this is used for.
  double s = std::clamp(ps, s_min_, s_max_);
  for (int it = 0; it < 100; ++it) {
    const double c = c_(s);
    const double dc = dc_(s);
    const double g = (s - ps) + (c - pc) * dc;
    const double step = g / (1.0 + dc * dc);
    const double next = std::clamp(s - step, s_min_, s_max_);
    const bool done = std::abs(next - s) <= 1e-16 * std::max(1.0, std::abs(s));
    s = next;
    if (done) break;
  }
  return to_xy(s, c_(s));
}

}  // namespace foldfem
