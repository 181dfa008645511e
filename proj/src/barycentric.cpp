#include "liftzonoid/barycentric.hpp"

#include <cmath>
#include <fmt/format.h>

#include "liftzonoid/depth.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/gaussian.hpp"
#include "liftzonoid/normal.hpp"
#include "liftzonoid/parallel.hpp"
#include "liftzonoid/rng.hpp"
#include "liftzonoid/zonoid.hpp"

namespace liftzonoid {

std::string_view to_string(CoordsKind kind) {
  switch (kind) {
    case CoordsKind::OffsetForm: return "offset";
    case CoordsKind::SupportForm: return "support";
    case CoordsKind::DepthForm: return "depth";
  }
  return "unknown";
}

CoordsKind parse_coords_kind(std::string_view name) {
  if (name == "offset") return CoordsKind::OffsetForm;
  if (name == "support") return CoordsKind::SupportForm;
  if (name == "depth") return CoordsKind::DepthForm;
  throw Error(ErrorKind::Input, fmt::format("unknown coordinate form '{}'", name));
}

namespace {

double residual_limit(const Vector& x, const Tolerances& tol) {
  return tol.representation * (1.0 + x.norm());
}

RepresentationResult represent_empirical(const EmpiricalMeasure& mu, const Vector& x,
                                         const Tolerances& tol) {
  const auto cert = zonoid_depth(mu, x, tol);
  RepresentationResult out{HalfSpace::whole_space(Direction(Vector::Unit(mu.dim(), 0)))};
  out.method = RepresentationMethod::LpDual;
  if (cert.status == DepthStatus::Mean) return out;
  if (cert.status == DepthStatus::Outside || cert.status == DepthStatus::Boundary ||
      cert.depth < tol.min_alpha) {
    throw Error(ErrorKind::OutsideSupport,
                fmt::format("point is not interior to the support (depth {}, {})", cert.depth,
                            to_string(cert.status)));
  }
  const Direction u = depth_dual_direction(cert);
  const double alpha = cert.depth;
  const double level = upper_quantile(mu, u, alpha);
  out.halfspace = HalfSpace{u, level};
  out.alpha = alpha;

  // Inclusion profile: full above the level, LP fraction on it, none below.
  const Vector p = mu.points().transpose() * u.vec();
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  const double tie = 1e-9 * scale;
  const Vector beta = cert.atom_weights * alpha;  // = γ·α, the LP's β
  Vector included = Vector::Zero(mu.size());
  bool fractional = false;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double w = mu.weights()[i];
    if (p[i] > level + tie) {
      included[i] = w;
    } else if (p[i] >= level - tie) {
      included[i] = std::clamp(beta[i], 0.0, w);
      out.boundary_mass += w;
      if (included[i] < w * (1.0 - 1e-9)) fractional = true;
    }
  }
  const Vector barycenter = mu.points() * included / included.sum();
  out.residual = (barycenter - x).norm();
  out.unique = !(fractional || cert.dual_degenerate);
  if (out.residual > residual_limit(x, tol)) {
    throw Error(ErrorKind::NotConverged,
                fmt::format("empirical representation residual {} exceeds tolerance", out.residual));
  }
  return out;
}

}  // namespace

RepresentationResult refine_representation(const Measure& mu, const Vector& x,
                                           const HalfSpace& start) {
  const auto d = dim(mu);
  constexpr double kStep = 1e-5;
  Vector theta(d + 1);
  theta.head(d) = start.direction.vec();
  theta[d] = start.offset;
  auto evaluate = [&](const Vector& t) -> Vector {
    const HalfSpace h{Direction(Vector(t.head(d))), t[d]};
    return halfspace_barycenter(mu, h) - x;
  };
  const Vector f0 = evaluate(theta);
  Matrix jac(d, d + 1);
  for (Eigen::Index k = 0; k <= d; ++k) {
    Vector t = theta;
    t[k] += kStep;
    jac.col(k) = (evaluate(t) - f0) / kStep;
  }
  const Vector step = jac.completeOrthogonalDecomposition().solve(-f0);
  theta += step;
  RepresentationResult out{HalfSpace{Direction(Vector(theta.head(d))), theta[d]}};
  out.method = RepresentationMethod::Refined;
  out.alpha = halfspace_mass(mu, out.halfspace);
  out.residual = (halfspace_barycenter(mu, out.halfspace) - x).norm();
  out.unique = std::holds_alternative<GaussianMeasure>(mu);
  return out;
}

RepresentationResult represent(const Measure& mu, const Vector& x, const Tolerances& tol) {
  require_dim(dim(mu), x.size(), "query point");
  require_finite(x, "query point");
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) return represent_empirical(*e, x, tol);

  const auto& g = std::get<GaussianMeasure>(mu);
  auto out = gaussian_represent(g, x);
  if (out.halfspace.is_whole_space()) return out;
  if (out.alpha < tol.min_alpha) {
    throw Error(ErrorKind::OutsideSupport,
                fmt::format("depth {} is below the representable floor {}", out.alpha,
                            tol.min_alpha));
  }
  if (out.residual > residual_limit(x, tol)) {
    out = refine_representation(mu, x, out.halfspace);
    if (out.residual > residual_limit(x, tol)) {
      throw Error(ErrorKind::NotConverged,
                  fmt::format("representation residual {} after refinement", out.residual));
    }
  }
  return out;
}

BarycentricCoords coords_from_point(const Measure& mu, const Vector& x, CoordsKind kind,
                                    const Tolerances& tol) {
  const auto rep = represent(mu, x, tol);
  if (rep.halfspace.is_whole_space()) {
    throw Error(ErrorKind::MeanPoint, "the mean has no barycentric coordinates");
  }
  const Direction& u = rep.halfspace.direction;
  switch (kind) {
    case CoordsKind::OffsetForm: return {kind, rep.halfspace.offset, u};
    case CoordsKind::SupportForm: return {kind, x.dot(u.vec()), u};
    case CoordsKind::DepthForm: return {kind, rep.alpha, u};
  }
  throw Error(ErrorKind::Input, "unknown coordinate form");
}

namespace {

Vector point_from_support(const Measure& mu, double h, const Direction& u) {
  const double center = mean(mu).dot(u.vec());
  const double scale = std::max({1.0, std::abs(h), std::abs(center)});
  if (h < center - 1e-12 * scale) {
    throw Error(ErrorKind::NoSolution,
                fmt::format("support value {} lies below the mean's {}", h, center));
  }
  if (h <= center + 1e-15 * scale) return mean(mu);
  if (const auto* g = std::get_if<GaussianMeasure>(&mu)) {
    const double sd = g->whiten_functional(u.vec()).norm();
    const double alpha = normal::radius_inverse((h - center) / sd);
    if (alpha <= 0.0) throw Error(ErrorKind::NoSolution, "support value is beyond reach");
    return trimmed_boundary_point(mu, {alpha, u});
  }
  const auto& e = std::get<EmpiricalMeasure>(mu);
  const double farthest = (e.points().transpose() * u.vec()).maxCoeff();
  if (h > farthest + 1e-12 * scale) {
    throw Error(ErrorKind::NoSolution,
                fmt::format("support value {} exceeds the hull's {}", h, farthest));
  }
  // h(D_α, u) is nonincreasing in α.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (support_trimmed(mu, {mid, u}) >= h) lo = mid; else hi = mid;
  }
  return trimmed_boundary_point(mu, {std::max(lo, 1e-300), u});
}

}  // namespace

Vector point_from_coords(const Measure& mu, const BarycentricCoords& coords) {
  require_dim(dim(mu), coords.direction.dim(), "coordinate direction");
  switch (coords.kind) {
    case CoordsKind::OffsetForm:
      return halfspace_barycenter(mu, HalfSpace{coords.direction, coords.scalar});
    case CoordsKind::SupportForm:
      return point_from_support(mu, coords.scalar, coords.direction);
    case CoordsKind::DepthForm:
      return trimmed_boundary_point(mu, {coords.scalar, coords.direction});
  }
  throw Error(ErrorKind::Input, "unknown coordinate form");
}

namespace {

bool parallel(const Direction& a, const Direction& b) {
  return (a.vec() - b.vec()).norm() <= 1e-12;
}

SymmetricDifference gaussian_symmetric_difference(const GaussianMeasure& mu, const HalfSpace& h,
                                                  const HalfSpace& g, std::size_t samples,
                                                  std::uint64_t seed, int workers) {
  if (h.is_whole_space() && g.is_whole_space()) return {};
  if (h.is_whole_space()) return {1.0 - halfspace_mass(mu, g)};
  if (g.is_whole_space()) return {1.0 - halfspace_mass(mu, h)};
  const double mh = halfspace_mass(mu, h);
  const double mg = halfspace_mass(mu, g);
  if (parallel(h.direction, g.direction)) return {std::abs(mh - mg)};
  if (parallel(h.direction, -g.direction)) {
    // Along p = <·, u_h>: H = [a_h, ∞), G = (-∞, -a_g].
    const auto law = project(mu, h.direction);
    const double upper = -g.offset;
    const double both = upper > h.offset ? normal::cdf((upper - law.mean) / law.sd) -
                                               normal::cdf((h.offset - law.mean) / law.sd)
                                         : 0.0;
    return {mh + mg - 2.0 * both};
  }
  if (samples < 1) throw Error(ErrorKind::Domain, "Monte-Carlo needs samples");
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::size_t> hits(chunks, 0);
  const auto d = mu.dim();
  for_each_task(chunks, workers, [&](std::size_t c) {
    auto rng = make_stream(seed, c);
    std::normal_distribution<double> normal;
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    Vector z(d);
    std::size_t count = 0;
    for (std::size_t k = c * kChunk; k < end; ++k) {
      for (Eigen::Index i = 0; i < d; ++i) z[i] = normal(rng);
      const Vector y = mu.unwhiten(z);
      if (h.contains(y) != g.contains(y)) ++count;
    }
    hits[c] = count;
  });
  std::size_t total = 0;
  for (auto c : hits) total += c;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(total) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), false};
}

}  // namespace

SymmetricDifference verify_uniqueness(const Measure& mu, const HalfSpace& h, const HalfSpace& g,
                                      std::size_t samples, std::uint64_t seed, int workers) {
  require_dim(dim(mu), h.direction.dim(), "half-space");
  require_dim(dim(mu), g.direction.dim(), "half-space");
  if (const auto* gm = std::get_if<GaussianMeasure>(&mu)) {
    return gaussian_symmetric_difference(*gm, h, g, samples, seed, workers);
  }
  const auto& e = std::get<EmpiricalMeasure>(mu);
  double mass = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const Vector y = e.atom(i);
    if (h.contains(y) != g.contains(y)) mass += e.weights()[i];
  }
  return {mass};
}

}  // namespace liftzonoid
