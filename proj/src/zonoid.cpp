#include "liftzonoid/zonoid.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "liftzonoid/directions.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/normal.hpp"

namespace liftzonoid {
namespace {

// E(s + σZ)₊ for Z standard normal.
double gaussian_positive_part(double s, double sd) {
  if (sd == 0.0) return std::max(s, 0.0);
  const double z = s / sd;
  return sd * normal::pdf(z) + s * normal::cdf(z);
}

}  // namespace

LiftDirection::LiftDirection(double t, const Vector& u) {
  require_finite(u, "lift direction");
  const double norm = std::hypot(t, u.norm());
  if (!std::isfinite(t) || !(norm > 0.0)) {
    throw Error(ErrorKind::Domain, "lift direction must be finite and nonzero");
  }
  t_ = t / norm;
  u_ = u / norm;
}

TrimmedRegionQuery::TrimmedRegionQuery(double a, Direction u) : alpha(a), direction(std::move(u)) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, fmt::format("alpha must lie in (0,1], got {}", alpha));
  }
}

double Polygon2D::support(const Eigen::Vector2d& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, v.dot(u));
  return best;
}

double support_zonoid(const Measure& mu, const Direction& u) {
  require_dim(dim(mu), u.dim(), "direction");
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) {
    const Vector p = e->points().transpose() * u.vec();
    return e->weights().dot(p.cwiseMax(0.0));
  }
  const auto law = project(std::get<GaussianMeasure>(mu), u);
  return gaussian_positive_part(law.mean, law.sd);
}

double support_lift_zonoid(const Measure& mu, const LiftDirection& w) {
  require_dim(dim(mu), w.dim(), "lift direction");
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) {
    const Vector p = (e->points().transpose() * w.u()).array() + w.t();
    return e->weights().dot(p.cwiseMax(0.0));
  }
  const auto& g = std::get<GaussianMeasure>(mu);
  return gaussian_positive_part(w.t() + g.mean().dot(w.u()), g.whiten_functional(w.u()).norm());
}

Vector trimmed_boundary_point(const Measure& mu, const TrimmedRegionQuery& q) {
  require_dim(dim(mu), q.direction.dim(), "direction");
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) {
    const auto fill = upper_fill(*e, q.direction, q.alpha);
    const Vector mass = fill.inclusion.cwiseProduct(e->weights());
    return e->points() * mass / mass.sum();
  }
  const auto& g = std::get<GaussianMeasure>(mu);
  if (q.alpha == 1.0) return g.mean();
  const Vector lt_u = g.whiten_functional(q.direction.vec());
  return g.mean() + normal::radius(q.alpha) * (g.factor() * lt_u) / lt_u.norm();
}

double support_trimmed(const Measure& mu, const TrimmedRegionQuery& q) {
  if (const auto* g = std::get_if<GaussianMeasure>(&mu)) {
    require_dim(g->dim(), q.direction.dim(), "direction");
    const auto law = project(*g, q.direction);
    if (q.alpha == 1.0) return law.mean;
    return law.mean + normal::radius(q.alpha) * law.sd;
  }
  return trimmed_boundary_point(mu, q).dot(q.direction.vec());
}

Polygon2D zonotope_polygon_2d(const EmpiricalMeasure& mu) {
  if (mu.dim() != 2) {
    throw Error(ErrorKind::WrongDimension,
                fmt::format("zonotope polygon needs d = 2, got {}", mu.dim()));
  }
  // Orient every generator w_i x_i into the half-plane of angles [0, π);
  // a flipped generator moves the base point by its original value.
  Eigen::Vector2d base = Eigen::Vector2d::Zero();
  std::vector<Eigen::Vector2d> gens;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    Eigen::Vector2d g = mu.weights()[i] * mu.atom(i);
    scale = std::max(scale, g.norm());
    if (g.y() < 0.0 || (g.y() == 0.0 && g.x() < 0.0)) {
      base += g;
      g = -g;
    }
    gens.push_back(g);
  }
  const double zero_tol = 1e-15 * std::max(scale, 1e-300);
  std::erase_if(gens, [&](const Eigen::Vector2d& g) { return g.norm() <= zero_tol; });
  auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
  };
  std::sort(gens.begin(), gens.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });
  // Merge parallel generators.
  std::vector<Eigen::Vector2d> merged;
  for (const auto& g : gens) {
    if (!merged.empty() &&
        std::abs(cross(merged.back(), g)) <= 1e-12 * merged.back().norm() * g.norm()) {
      merged.back() += g;
    } else {
      merged.push_back(g);
    }
  }

  Polygon2D poly;
  Eigen::Vector2d p = base;
  poly.vertices.push_back(p);
  for (const auto& g : merged) poly.vertices.push_back(p += g);
  // Back along the same generators, now reversed, stopping short of the base.
  for (size_t k = 0; k + 1 < merged.size(); ++k) poly.vertices.push_back(p -= merged[k]);
  return poly;
}

double hausdorff_support_distance(const Measure& mu, double alpha, double beta, int count,
                                  std::uint64_t seed) {
  const auto d = dim(mu);
  if (d >= 2 && count < 4) {
    throw Error(ErrorKind::Domain, "hausdorff estimate needs at least 4 directions");
  }
  double worst = 0.0;
  for (const auto& u : direction_grid(d, count, seed)) {
    const double gap =
        support_trimmed(mu, {alpha, u}) - support_trimmed(mu, {beta, u});
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

}  // namespace liftzonoid
