#pragma once

#include <cstdint>
#include <vector>

#include "liftzonoid/measures.hpp"

namespace liftzonoid {

// Direction (t, u) in R × R^d dual to the lift zonoid; normalized once here.
class LiftDirection {
 public:
  LiftDirection(double t, const Vector& u);

  double t() const noexcept { return t_; }
  const Vector& u() const noexcept { return u_; }
  Eigen::Index dim() const noexcept { return u_.size(); }

 private:
  double t_;
  Vector u_;
};

struct TrimmedRegionQuery {
  TrimmedRegionQuery(double alpha, Direction u);
  double alpha;
  Direction direction;
};

struct Polygon2D {
  std::vector<Eigen::Vector2d> vertices;  // counterclockwise, closed implicitly

  double support(const Eigen::Vector2d& u) const;
};

// h(Z(μ), u) = E<X, u>₊.
double support_zonoid(const Measure& mu, const Direction& u);

// h(Ẑ(μ), (t, u)) = E(t + <X, u>)₊.
double support_lift_zonoid(const Measure& mu, const LiftDirection& w);

// h(D_α(μ), u): the mean of the upper-α part of the projection on u.
double support_trimmed(const Measure& mu, const TrimmedRegionQuery& q);

// The point of D_α(μ) where <·, u> attains support_trimmed. Tied atoms at
// the marginal level share the residual mass in proportion to their weights.
Vector trimmed_boundary_point(const Measure& mu, const TrimmedRegionQuery& q);

// Exact Z(μ) = Σ [0, w_i x_i] for planar atoms.
Polygon2D zonotope_polygon_2d(const EmpiricalMeasure& mu);

// max_u |h(D_α, u) - h(D_β, u)| over direction_grid(d, count, seed).
double hausdorff_support_distance(const Measure& mu, double alpha, double beta, int count,
                                  std::uint64_t seed = 0);

}  // namespace liftzonoid
