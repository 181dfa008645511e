#include "liftzonoid/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "liftzonoid/config.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/normal.hpp"

namespace liftzonoid {

EmpiricalMeasure::EmpiricalMeasure(Matrix points, Vector weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw Error(ErrorKind::Input, "empirical measure needs d >= 1 and n >= 1");
  }
  require_dim(points_.cols(), weights_.size(), "weights");
  if (!points_.allFinite()) throw Error(ErrorKind::NonFinite, "atoms must be finite");
  if (!weights_.allFinite() || (weights_.array() <= 0.0).any()) {
    throw Error(ErrorKind::Input, "every weight must be positive and finite");
  }
  const double total = weights_.sum();
  if (std::abs(total - 1.0) > default_tolerances().weight_sum) {
    throw Error(ErrorKind::Input, fmt::format("weights sum to {}, expected 1", total));
  }
  mean_ = points_ * weights_;
}

EmpiricalMeasure EmpiricalMeasure::uniform(Matrix points) {
  const auto n = points.cols();
  if (n < 1) throw Error(ErrorKind::Input, "empirical measure needs n >= 1");
  Vector w = Vector::Constant(n, 1.0 / static_cast<double>(n));
  return normalized(std::move(points), std::move(w));
}

EmpiricalMeasure EmpiricalMeasure::normalized(Matrix points, Vector weights) {
  if (!weights.allFinite() || (weights.array() <= 0.0).any()) {
    throw Error(ErrorKind::Input, "every weight must be positive and finite");
  }
  weights /= weights.sum();
  return EmpiricalMeasure(std::move(points), std::move(weights));
}

GaussianMeasure GaussianMeasure::from_covariance(Vector mean, const Matrix& covariance) {
  const auto d = mean.size();
  if (d < 1) throw Error(ErrorKind::Input, "Gaussian mean must have dimension >= 1");
  require_finite(mean, "Gaussian mean");
  if (covariance.rows() != d || covariance.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("covariance must be {}x{}, got {}x{}", d, d, covariance.rows(),
                            covariance.cols()));
  }
  if (!covariance.allFinite()) throw Error(ErrorKind::NonFinite, "covariance is not finite");
  if (!covariance.isApprox(covariance.transpose(), 1e-12)) {
    throw Error(ErrorKind::Input, "covariance must be symmetric");
  }
  Eigen::LLT<Matrix> llt(covariance);
  Matrix factor = llt.matrixL();
  const auto diag = factor.diagonal().cwiseAbs();
  if (llt.info() != Eigen::Success || !(diag.minCoeff() > 1e-12 * diag.maxCoeff())) {
    throw Error(ErrorKind::DegenerateMeasure, "covariance is not positive definite");
  }
  return GaussianMeasure(std::move(mean), std::move(factor));
}

GaussianMeasure GaussianMeasure::from_factor(Vector mean, const Matrix& factor) {
  if (factor.rows() != mean.size()) {
    throw Error(ErrorKind::DimensionMismatch, "covariance factor rows must match the mean");
  }
  return from_covariance(std::move(mean), factor * factor.transpose());
}

GaussianMeasure GaussianMeasure::standard(Eigen::Index dim) {
  return GaussianMeasure(Vector::Zero(dim), Matrix::Identity(dim, dim));
}

Vector GaussianMeasure::whiten(const Vector& x) const {
  require_dim(dim(), x.size(), "point");
  return factor_.triangularView<Eigen::Lower>().solve(x - mean_);
}

Vector GaussianMeasure::unwhiten(const Vector& z) const { return mean_ + factor_ * z; }

Eigen::Index dim(const Measure& mu) {
  return std::visit([](const auto& m) { return m.dim(); }, mu);
}

Vector mean(const Measure& mu) {
  return std::visit([](const auto& m) -> Vector { return m.mean(); }, mu);
}

EmpiricalProjection project(const EmpiricalMeasure& mu, const Direction& u) {
  require_dim(mu.dim(), u.dim(), "direction");
  const Vector p = mu.points().transpose() * u.vec();
  std::vector<Eigen::Index> order(static_cast<size_t>(mu.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return p[a] < p[b]; });
  EmpiricalProjection out;
  out.values.reserve(order.size());
  out.weights.reserve(order.size());
  for (auto i : order) {
    out.values.push_back(p[i]);
    out.weights.push_back(mu.weights()[i]);
  }
  out.atoms = std::move(order);
  return out;
}

GaussianProjection project(const GaussianMeasure& mu, const Direction& u) {
  require_dim(mu.dim(), u.dim(), "direction");
  return {mu.mean().dot(u.vec()), mu.whiten_functional(u.vec()).norm()};
}

ProjectionLaw project(const Measure& mu, const Direction& u) {
  return std::visit([&](const auto& m) -> ProjectionLaw { return project(m, u); }, mu);
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, fmt::format("alpha must lie in (0,1], got {}", alpha));
  }
}

}  // namespace

UpperFill upper_fill(const EmpiricalMeasure& mu, const Direction& u, double alpha) {
  require_alpha(alpha);
  const auto law = project(mu, u);
  const auto n = static_cast<std::ptrdiff_t>(law.values.size());
  const double scale =
      std::max({1.0, std::abs(law.values.front()), std::abs(law.values.back())});
  const double tie = default_tolerances().tie * scale;
  const double mass_eps = 1e-12;

  UpperFill fill{law.values.front(), 0.0, 0.0, Vector::Zero(mu.size())};
  double cumulative = 0.0;
  std::ptrdiff_t hi = n - 1;
  while (hi >= 0) {
    // Tie group [lo, hi] in ascending order.
    std::ptrdiff_t lo = hi;
    while (lo > 0 && law.values[hi] - law.values[lo - 1] <= tie) --lo;
    double group = 0.0;
    for (auto k = lo; k <= hi; ++k) group += law.weights[k];
    if (cumulative + group >= alpha - mass_eps || lo == 0) {
      const double share = std::clamp((alpha - cumulative) / group, 0.0, 1.0);
      for (auto k = lo; k <= hi; ++k) fill.inclusion[law.atoms[k]] = share;
      fill.level = law.values[lo];  // lowest of the group, so the closed half-space holds it all
      fill.strict_mass = cumulative;
      fill.boundary_mass = group;
      return fill;
    }
    for (auto k = lo; k <= hi; ++k) fill.inclusion[law.atoms[k]] = 1.0;
    cumulative += group;
    hi = lo - 1;
  }
  return fill;
}

double upper_quantile(const Measure& mu, const Direction& u, double alpha) {
  require_alpha(alpha);
  if (const auto* g = std::get_if<GaussianMeasure>(&mu)) {
    if (alpha == 1.0) return -std::numeric_limits<double>::infinity();
    const auto law = project(*g, u);
    return law.mean - law.sd * normal::quantile(alpha);
  }
  return upper_fill(std::get<EmpiricalMeasure>(mu), u, alpha).level;
}

double halfspace_mass(const EmpiricalMeasure& mu, const HalfSpace& h) {
  require_dim(mu.dim(), h.direction.dim(), "half-space");
  if (h.is_whole_space()) return 1.0;
  const Vector p = mu.points().transpose() * h.direction.vec();
  double mass = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (p[i] >= h.offset) mass += mu.weights()[i];
  }
  return std::min(mass, 1.0);
}

double halfspace_mass(const GaussianMeasure& mu, const HalfSpace& h) {
  if (h.is_whole_space()) return 1.0;
  const auto law = project(mu, h.direction);
  return normal::sf((h.offset - law.mean) / law.sd);
}

double halfspace_mass(const Measure& mu, const HalfSpace& h) {
  return std::visit([&](const auto& m) { return halfspace_mass(m, h); }, mu);
}

Vector halfspace_barycenter(const EmpiricalMeasure& mu, const HalfSpace& h) {
  require_dim(mu.dim(), h.direction.dim(), "half-space");
  if (h.is_whole_space()) return mu.mean();
  const Vector p = mu.points().transpose() * h.direction.vec();
  Vector sum = Vector::Zero(mu.dim());
  double mass = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (p[i] >= h.offset) {
      sum += mu.weights()[i] * mu.atom(i);
      mass += mu.weights()[i];
    }
  }
  if (mass <= 0.0) throw Error(ErrorKind::ZeroMass, "half-space carries no atoms");
  return sum / mass;
}

Vector halfspace_barycenter(const GaussianMeasure& mu, const HalfSpace& h) {
  require_dim(mu.dim(), h.direction.dim(), "half-space");
  if (h.is_whole_space()) return mu.mean();
  // In whitened coordinates the half-space is {z : <z, v> >= c}.
  const Vector lt_u = mu.whiten_functional(h.direction.vec());
  const double sd = lt_u.norm();
  const double c = (h.offset - mu.mean().dot(h.direction.vec())) / sd;
  return mu.mean() + mu.factor() * (lt_u / sd) * normal::mills_ratio(c);
}

Vector halfspace_barycenter(const Measure& mu, const HalfSpace& h) {
  return std::visit([&](const auto& m) { return halfspace_barycenter(m, h); }, mu);
}

EmpiricalMeasure affine_image(const EmpiricalMeasure& mu, const Matrix& m, const Vector& b) {
  if (m.cols() != mu.dim() || m.rows() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("affine map {}x{} + {} does not fit dimension {}", m.rows(),
                            m.cols(), b.size(), mu.dim()));
  }
  Matrix mapped = m * mu.points();
  mapped.colwise() += b;
  return EmpiricalMeasure(std::move(mapped), mu.weights());
}

GaussianMeasure affine_image(const GaussianMeasure& mu, const Matrix& m, const Vector& b) {
  if (m.cols() != mu.dim() || m.rows() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("affine map {}x{} + {} does not fit dimension {}", m.rows(),
                            m.cols(), b.size(), mu.dim()));
  }
  return GaussianMeasure::from_factor(m * mu.mean() + b, m * mu.factor());
}

Measure affine_image(const Measure& mu, const Matrix& m, const Vector& b) {
  return std::visit([&](const auto& x) -> Measure { return affine_image(x, m, b); }, mu);
}

}  // namespace liftzonoid
