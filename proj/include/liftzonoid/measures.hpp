#pragma once

#include <variant>
#include <vector>

#include "liftzonoid/geometry.hpp"

namespace liftzonoid {

// Weighted finite point cloud; atoms are the columns of points().
class EmpiricalMeasure {
 public:
  // Weights must be positive and sum to one within Tolerances::weight_sum.
  EmpiricalMeasure(Matrix points, Vector weights);

  static EmpiricalMeasure uniform(Matrix points);
  // Rescales positive weights to sum one.
  static EmpiricalMeasure normalized(Matrix points, Vector weights);

  Eigen::Index dim() const noexcept { return points_.rows(); }
  Eigen::Index size() const noexcept { return points_.cols(); }
  const Matrix& points() const noexcept { return points_; }
  const Vector& weights() const noexcept { return weights_; }
  auto atom(Eigen::Index i) const { return points_.col(i); }
  const Vector& mean() const noexcept { return mean_; }

 private:
  Matrix points_;
  Vector weights_;
  Vector mean_;
};

// N(m, LLᵀ) with L the lower Cholesky factor of a positive definite covariance.
class GaussianMeasure {
 public:
  static GaussianMeasure from_covariance(Vector mean, const Matrix& covariance);
  // Any square or wide factor A with AAᵀ positive definite.
  static GaussianMeasure from_factor(Vector mean, const Matrix& factor);
  static GaussianMeasure standard(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return mean_.size(); }
  const Vector& mean() const noexcept { return mean_; }
  const Matrix& factor() const noexcept { return factor_; }
  Matrix covariance() const { return factor_ * factor_.transpose(); }

  // z = L⁻¹(x - m) and its inverse.
  Vector whiten(const Vector& x) const;
  Vector unwhiten(const Vector& z) const;
  // Lᵀu: the whitened image of a linear functional.
  Vector whiten_functional(const Vector& u) const { return factor_.transpose() * u; }

 private:
  GaussianMeasure(Vector mean, Matrix factor) : mean_(std::move(mean)), factor_(std::move(factor)) {}
  Vector mean_;
  Matrix factor_;
};

using Measure = std::variant<EmpiricalMeasure, GaussianMeasure>;

struct EmpiricalProjection {
  std::vector<double> values;   // ascending
  std::vector<double> weights;  // carried with values
  std::vector<Eigen::Index> atoms;
};

struct GaussianProjection {
  double mean;
  double sd;
};

using ProjectionLaw = std::variant<EmpiricalProjection, GaussianProjection>;

// Greedy upper-α fill of an empirical projection: atoms strictly above
// `level` are fully included, the tied atoms at `level` share the remaining
// mass in proportion to their weights, everything below is excluded.
struct UpperFill {
  double level;
  double strict_mass;    // mass strictly above level
  double boundary_mass;  // mass sitting at level
  Vector inclusion;      // g_i in [0,1] per atom, Σ g_i w_i = α
};

Eigen::Index dim(const Measure& mu);
Vector mean(const Measure& mu);

EmpiricalProjection project(const EmpiricalMeasure& mu, const Direction& u);
GaussianProjection project(const GaussianMeasure& mu, const Direction& u);
ProjectionLaw project(const Measure& mu, const Direction& u);

UpperFill upper_fill(const EmpiricalMeasure& mu, const Direction& u, double alpha);

// Gaussian: the a with μ{<·,u> >= a} = α (-inf at α = 1). Empirical: the
// largest a with closed upper mass >= α, always an atom projection.
double upper_quantile(const Measure& mu, const Direction& u, double alpha);

double halfspace_mass(const EmpiricalMeasure& mu, const HalfSpace& h);
double halfspace_mass(const GaussianMeasure& mu, const HalfSpace& h);
double halfspace_mass(const Measure& mu, const HalfSpace& h);

// ∫_H x dμ / μ(H). Throws ZeroMass on an empty empirical intersection.
Vector halfspace_barycenter(const EmpiricalMeasure& mu, const HalfSpace& h);
Vector halfspace_barycenter(const GaussianMeasure& mu, const HalfSpace& h);
Vector halfspace_barycenter(const Measure& mu, const HalfSpace& h);

// Law of MX + b.
EmpiricalMeasure affine_image(const EmpiricalMeasure& mu, const Matrix& m, const Vector& b);
GaussianMeasure affine_image(const GaussianMeasure& mu, const Matrix& m, const Vector& b);
Measure affine_image(const Measure& mu, const Matrix& m, const Vector& b);

}  // namespace liftzonoid
