#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "foldfem/geometry.hpp"

namespace foldfem {

/// Two triangles T+ = (A, B, P+) and T- = (A, B, P-) sharing the edge AB.
/// The unit normal of AB points out of T+ into T-; the tangent runs A -> B.
struct RhombusPatch {
  Point a, b, p_plus, p_minus;

  /// Throws ConfigError unless P+ and P- lie strictly on opposite sides of AB.
  void validate() const;
  double edge_length() const { return distance(a, b); }
  Vec2 normal() const;
  Vec2 tangent() const;
};

enum class BubbleDirection { Normal, Tangential };

const char* to_string(BubbleDirection d);

/// Edge bubble phi = psi * Lambda_B^4 * Lambda_A^4 on each triangle of the
/// patch, zero elsewhere. Lambda_A, Lambda_B are the barycentric coordinates
/// of A and B in that triangle (they vanish on P B and A P respectively), and
/// psi is affine per triangle with grad psi|_{T+-} = +- alpha / (2 h) and
/// psi(midpoint of AB) = 0.
class BubbleFunction {
 public:
  BubbleFunction(const RhombusPatch& patch, BubbleDirection direction);

  struct Trace {
    double value = 0.0;
    Vec2 gradient;
  };

  const RhombusPatch& patch() const { return patch_; }
  BubbleDirection direction() const { return direction_; }
  Vec2 alpha() const { return alpha_; }

  /// Polynomial piece of T+ (side = +1) or T- (side = -1) evaluated at x.
  Trace piece(int side, Point x) const;
  /// Lambda_A^4 Lambda_B^4 of the given side at x.
  double edge_weight(int side, Point x) const;
  /// The bubble itself: the containing triangle's piece, zero outside.
  Trace operator()(Point x) const;

 private:
  struct Affine {
    Vec2 grad;
    double at_origin = 0.0;
    double operator()(Point x) const { return at_origin + dot(grad, x); }
  };
  struct Piece {
    Affine lambda_a, lambda_b, psi;
  };

  RhombusPatch patch_;
  BubbleDirection direction_;
  Vec2 alpha_;
  Piece plus_, minus_;
};

/// Largest violations of the edge-bubble identities over sample points on
/// the five patch edges: [phi] = {phi} = 0 and {grad phi} = 0 on every edge,
/// [grad phi] = 0 on the outer edges and [grad phi] = h^-1 Lambda^4 Lambda^4
/// alpha on the shared edge, where [v] = v|T+ - v|T-. Outer edges use the
/// one-sided conventions
/// [v] = -v, {v} = v.
struct BubbleIdentityReport {
  double jump_value = 0.0;
  double average_value = 0.0;
  double average_gradient = 0.0;
  double gradient_jump_shared = 0.0;
  double gradient_jump_outer = 0.0;
  int samples = 0;

  double worst() const;
};

/// quad_degree >= 10 selects the Gauss points used as samples (plus edge end
/// points and midpoints).
BubbleIdentityReport verify_bubble_identities(const BubbleFunction& bubble, int quad_degree = 12);

struct NamedPatch {
  std::string name;
  RhombusPatch patch;
};

/// Symmetric rhombus, three seeded random convex patches, and a 30/150
/// degree rhombus split along its long diagonal.
std::vector<NamedPatch> standard_patches();

struct BubbleCheckRow {
  std::string patch;
  BubbleDirection direction;
  BubbleIdentityReport report;
};

/// Runs verify_bubble_identities for every standard patch and both directions.
std::vector<BubbleCheckRow> run_bubble_suite(int quad_degree = 12);

/// CSV with header patch,direction,jump_value,average_value,average_gradient,
/// gradient_jump_shared,gradient_jump_outer,pass (pass: every entry <= tol).
void write_bubble_csv(std::ostream& os, const std::vector<BubbleCheckRow>& rows, double tol = 1e-12);

}  // namespace foldfem
