#pragma once

#include <array>
#include <span>
#include <vector>

#include "foldfem/problem.hpp"
#include "foldfem/space.hpp"

namespace foldfem {

enum class EstimatorVariant {
  WithEta1,   // eta_tot^2 = eta_1^2 + ... + eta_6^2
  PaperMode,  // eta_tot^2 = eta_2^2 + ... + eta_6^2
};

/// Squared per-edge contributions to eta_2 .. eta_6.
struct EdgeContribution {
  double eta2 = 0.0;  // h^-3 |[u_h]|^2 on interior, crease and Dirichlet edges
  double eta3 = 0.0;  // h^-1 |[grad u_h]|^2 on the same edges minus the crease
  double eta4 = 0.0;  // h |[D^2 u_h n]|^2 on edges inside the domain
  double eta5 = 0.0;  // h |{D^2 u_h n}|^2 on crease edges
  double eta6 = 0.0;  // h^3 |[d_n Laplace u_h]|^2 on edges inside the domain

  double sum() const { return eta2 + eta3 + eta4 + eta5 + eta6; }
};

struct EstimatorReport {
  EstimatorVariant variant = EstimatorVariant::WithEta1;
  std::vector<double> eta1_squared;  // per element: h_T^4 |f - Delta^2 u_h|^2
  std::vector<EdgeContribution> edges;
  std::array<double, 7> eta{};  // eta[1] .. eta[6]; eta[0] unused

  /// Total for the report's own variant.
  double total() const { return total(variant); }
  double total(EstimatorVariant v) const;
};

/// Residual estimators. On Dirichlet edges the value and gradient jumps are
/// g - u_h and Phi - grad u_h.
EstimatorReport compute_estimators(const DgSpace& space, const ProblemSpec& prob, std::span<const double> coeffs,
                                   EstimatorVariant variant = EstimatorVariant::WithEta1);

/// Element indicators: eta_1 part (when the variant includes it) plus half of
/// each interior/crease edge contribution and all of each boundary edge
/// contribution. The squares sum to total()^2.
std::vector<double> local_indicators(const EstimatorReport& report, const Mesh& mesh);

}  // namespace foldfem
