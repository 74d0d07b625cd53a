#include "foldfem/theory.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>

#include "foldfem/quadrature.hpp"

namespace foldfem {

void RhombusPatch::validate() const {
  const double len = distance(a, b);
  if (!(len > 0.0)) throw ConfigError("degenerate patch: shared edge has zero length");
  const double sp = signed_area2(a, b, p_plus);
  const double sm = signed_area2(a, b, p_minus);
  const double tol = 1e-12 * len * len;
  if (!(std::abs(sp) > tol && std::abs(sm) > tol) || (sp > 0) == (sm > 0))
    throw ConfigError("degenerate patch: P+ and P- must lie strictly on opposite sides of AB");
}

Vec2 RhombusPatch::tangent() const { return (1.0 / distance(a, b)) * (b - a); }

Vec2 RhombusPatch::normal() const {
  const Vec2 t = tangent();
  Vec2 n{t.y, -t.x};
  if (dot(n, p_plus - a) > 0.0) n = -1.0 * n;  // out of T+
  return n;
}

const char* to_string(BubbleDirection d) { return d == BubbleDirection::Normal ? "normal" : "tangential"; }

BubbleFunction::BubbleFunction(const RhombusPatch& patch, BubbleDirection direction)
    : patch_(patch), direction_(direction) {
  patch_.validate();
  alpha_ = direction == BubbleDirection::Normal ? patch_.normal() : patch_.tangent();
  const double h = patch_.edge_length();
  const Point m = midpoint(patch_.a, patch_.b);

  // Barycentric coordinate of `vertex` in triangle (vertex, q, r).
  auto barycentric = [](Point vertex, Point q, Point r) {
    const double det = signed_area2(vertex, q, r);
    // lambda(x) = cross(r - q, x - q) / det
    const Vec2 edge = r - q;
    Affine f;
    f.grad = Vec2{-edge.y / det, edge.x / det};
    f.at_origin = -dot(f.grad, q);
    return f;
  };
  auto make_piece = [&](Point p, double sign) {
    Piece piece;
    piece.lambda_a = barycentric(patch_.a, patch_.b, p);
    piece.lambda_b = barycentric(patch_.b, p, patch_.a);
    piece.psi.grad = (sign / (2.0 * h)) * alpha_;
    piece.psi.at_origin = -dot(piece.psi.grad, m);
    return piece;
  };
  plus_ = make_piece(patch_.p_plus, 1.0);
  minus_ = make_piece(patch_.p_minus, -1.0);
}

double BubbleFunction::edge_weight(int side, Point x) const {
  const Piece& p = side > 0 ? plus_ : minus_;
  const double la = p.lambda_a(x), lb = p.lambda_b(x);
  return std::pow(la, 4) * std::pow(lb, 4);
}

BubbleFunction::Trace BubbleFunction::piece(int side, Point x) const {
  const Piece& p = side > 0 ? plus_ : minus_;
  const double la = p.lambda_a(x), lb = p.lambda_b(x), psi = p.psi(x);
  const double d = std::pow(la, 4) * std::pow(lb, 4);
  const Vec2 grad_d = (4.0 * std::pow(la, 3) * std::pow(lb, 4)) * p.lambda_a.grad +
                      (4.0 * std::pow(la, 4) * std::pow(lb, 3)) * p.lambda_b.grad;
  return {psi * d, d * p.psi.grad + psi * grad_d};
}

BubbleFunction::Trace BubbleFunction::operator()(Point x) const {
  constexpr double tol = 1e-14;
  for (int side : {1, -1}) {
    const Piece& p = side > 0 ? plus_ : minus_;
    const double la = p.lambda_a(x), lb = p.lambda_b(x);
    if (la >= -tol && lb >= -tol && 1.0 - la - lb >= -tol) return piece(side, x);
  }
  return {};
}

double BubbleIdentityReport::worst() const {
  return std::max({jump_value, average_value, average_gradient, gradient_jump_shared, gradient_jump_outer});
}

BubbleIdentityReport verify_bubble_identities(const BubbleFunction& bubble, int quad_degree) {
  if (quad_degree < 10) throw ConfigError("bubble identities need a sample rule of degree >= 10");
  const EdgeQuadratureRule rule = edge_quadrature(quad_degree);
  std::vector<double> params = rule.points;
  params.insert(params.end(), {0.0, 0.5, 1.0});

  const RhombusPatch& p = bubble.patch();
  const double h = p.edge_length();
  BubbleIdentityReport report;
  auto sample = [&](Point from, Point to, auto&& visit) {
    for (double s : params) {
      visit(from + s * (to - from));
      ++report.samples;
    }
  };

  // Shared edge: both pieces.
  sample(p.a, p.b, [&](Point x) {
    const auto plus = bubble.piece(1, x);
    const auto minus = bubble.piece(-1, x);
    const double weight = bubble.edge_weight(1, x);
    const Vec2 jump_grad = plus.gradient - minus.gradient;
    const Vec2 expected = (weight / h) * bubble.alpha();
    report.jump_value = std::max(report.jump_value, std::abs(plus.value - minus.value));
    report.average_value = std::max(report.average_value, std::abs(0.5 * (plus.value + minus.value)));
    report.average_gradient = std::max(report.average_gradient, norm(0.5 * (plus.gradient + minus.gradient)));
    report.gradient_jump_shared = std::max(report.gradient_jump_shared, norm(jump_grad - expected));
  });
  // Outer edges: one-sided conventions.
  const std::array<std::tuple<Point, Point, int>, 4> outer{
      std::tuple{p.a, p.p_plus, 1}, std::tuple{p.p_plus, p.b, 1}, std::tuple{p.a, p.p_minus, -1},
      std::tuple{p.p_minus, p.b, -1}};
  for (const auto& [from, to, side] : outer) {
    sample(from, to, [&, side = side](Point x) {
      const auto tr = bubble.piece(side, x);
      report.jump_value = std::max(report.jump_value, std::abs(tr.value));
      report.average_value = std::max(report.average_value, std::abs(tr.value));
      report.average_gradient = std::max(report.average_gradient, norm(tr.gradient));
      report.gradient_jump_outer = std::max(report.gradient_jump_outer, norm(tr.gradient));
    });
  }
  return report;
}

std::vector<NamedPatch> standard_patches() {
  std::vector<NamedPatch> out;
  const double s3 = std::sqrt(3.0) / 2.0;
  out.push_back({"symmetric_rhombus", {{0.0, 0.0}, {1.0, 0.0}, {0.5, s3}, {0.5, -s3}}});

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> along(0.1, 0.9), off(0.2, 1.2), angle(0.0, 2.0 * std::numbers::pi),
      scale(0.05, 2.0), shift(-1.0, 1.0);
  for (int i = 0; i < 3; ++i) {
    const double xp = along(rng), yp = off(rng), xm = along(rng), ym = -off(rng);
    const double th = angle(rng), sc = scale(rng), tx = shift(rng), ty = shift(rng);
    auto place = [&](double x, double y) {
      return Point{tx + sc * (std::cos(th) * x - std::sin(th) * y), ty + sc * (std::sin(th) * x + std::cos(th) * y)};
    };
    out.push_back({"random_convex_" + std::to_string(i),
                   {place(0, 0), place(1, 0), place(xp, yp), place(xm, ym)}});
  }

  // Rhombus with 30 and 150 degree angles, shared edge = long diagonal.
  const double c = std::cos(std::numbers::pi / 6.0), s = std::sin(std::numbers::pi / 6.0);
  out.push_back({"skewed_30_150", {{0.0, 0.0}, {1.0 + c, s}, {c, s}, {1.0, 0.0}}});
  return out;
}

std::vector<BubbleCheckRow> run_bubble_suite(int quad_degree) {
  std::vector<BubbleCheckRow> rows;
  for (const NamedPatch& np : standard_patches()) {
    for (BubbleDirection d : {BubbleDirection::Normal, BubbleDirection::Tangential}) {
      rows.push_back({np.name, d, verify_bubble_identities(BubbleFunction(np.patch, d), quad_degree)});
    }
  }
  return rows;
}

void write_bubble_csv(std::ostream& os, const std::vector<BubbleCheckRow>& rows, double tol) {
  os << "patch,direction,jump_value,average_value,average_gradient,gradient_jump_shared,gradient_jump_outer,pass\n";
  char buf[512];
  for (const auto& row : rows) {
    const auto& r = row.report;
    std::snprintf(buf, sizeof buf, "%s,%s,%.6e,%.6e,%.6e,%.6e,%.6e,%d\n", row.patch.c_str(),
                  to_string(row.direction), r.jump_value, r.average_value, r.average_gradient,
                  r.gradient_jump_shared, r.gradient_jump_outer, r.worst() <= tol ? 1 : 0);
    os << buf;
  }
}

}  // namespace foldfem
