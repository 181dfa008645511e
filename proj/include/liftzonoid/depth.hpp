#pragma once

#include <optional>
#include <string_view>

#include "liftzonoid/config.hpp"
#include "liftzonoid/measures.hpp"

namespace liftzonoid {

enum class DepthStatus { Interior, Boundary, Outside, Mean };

std::string_view to_string(DepthStatus status);

// Zonoid depth α(x) with the LP evidence behind it.
//   atom_weights γ: Σγ_i x_i = x, Σγ_i = 1, depth = 1 / max_i(γ_i / w_i).
//   dual_direction: unit outer normal of D_α(x) at x taken from the LP duals.
struct DepthCertificate {
  double depth = 0.0;
  DepthStatus status = DepthStatus::Outside;
  Vector atom_weights;
  std::optional<Direction> dual_direction;
  bool dual_degenerate = false;
  double max_weight_ratio = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
};

// Throws DegenerateMeasure unless the atoms affinely span R^d
// (pivoted QR of the centered atoms, relative threshold Tolerances::rank).
void require_full_affine_rank(const EmpiricalMeasure& mu,
                              const Tolerances& tol = default_tolerances());

// Solves  max Σβ_i  s.t.  Σβ_i (x_i - x) = 0,  0 <= β_i <= w_i,
// the scaled form of  min t  s.t.  Σγ_i x_i = x, Σγ_i = 1, 0 <= γ_i <= t w_i
// (β = γ/t, depth = Σβ = 1/t).
DepthCertificate zonoid_depth(const EmpiricalMeasure& mu, const Vector& x,
                              const Tolerances& tol = default_tolerances());

// Throws NoDual for Mean and Outside certificates.
Direction depth_dual_direction(const DepthCertificate& cert);

// Independent check of zonoid_depth for n <= 12, d <= 3: bisection on α with
// membership x ∈ D_α decided by a direction-grid support comparison and then
// by enumerating every vertex basis of {γ : Σγ_i x_i = x, Σγ_i = 1, 0 <= γ_i <= w_i/α}.
double depth_bruteforce_oracle(const EmpiricalMeasure& mu, const Vector& x, int grid = 64);

}  // namespace liftzonoid
