#include "verify.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "liftzonoid/barycentric.hpp"
#include "liftzonoid/depth.hpp"
#include "liftzonoid/directions.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/gaussian.hpp"
#include "liftzonoid/normal.hpp"
#include "liftzonoid/parallel.hpp"
#include "liftzonoid/rng.hpp"
#include "liftzonoid/zonoid.hpp"

namespace liftzonoid::cli {
namespace {

using nlohmann::json;

class Report {
 public:
  void add(const std::string& name, double max_error, double tolerance) {
    const bool ok = std::isfinite(max_error) && max_error <= tolerance;
    pass_ = pass_ && ok;
    properties_.push_back(
        {{"name", name}, {"max_error", max_error}, {"tolerance", tolerance}, {"pass", ok}});
  }
  json finish(json head) const {
    head["properties"] = properties_;
    head["pass"] = pass_;
    return head;
  }

 private:
  json properties_ = json::array();
  bool pass_ = true;
};

json describe(const Measure& mu) {
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) {
    return {{"type", "empirical"}, {"dim", e->dim()}, {"atoms", e->size()}};
  }
  return {{"type", "gaussian"}, {"dim", dim(mu)}};
}

Vector uniform_vector(std::mt19937_64& rng, Eigen::Index d, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = uni(rng);
  return v;
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> nd;
  Vector v(d);
  do {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = nd(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

EmpiricalMeasure random_cloud(std::mt19937_64& rng, Eigen::Index d, Eigen::Index n) {
  Matrix p(d, n);
  for (Eigen::Index j = 0; j < n; ++j) p.col(j) = uniform_vector(rng, d, -1.0, 1.0);
  return EmpiricalMeasure::uniform(std::move(p));
}

double data_scale(const Measure& mu) {
  if (const auto* e = std::get_if<EmpiricalMeasure>(&mu)) {
    return std::max(1.0, e->points().cwiseAbs().maxCoeff());
  }
  const auto& g = std::get<GaussianMeasure>(mu);
  return std::max({1.0, g.mean().cwiseAbs().maxCoeff(), g.factor().cwiseAbs().maxCoeff()});
}

// Per-direction deviations for the structural properties of Z and D_α.
struct DirectionErrors {
  double symmetry = 0, nesting = 0, reflection = 0, continuity = 0, closure = 0, section = 0,
         polygon = 0, direct_sum = 0;
};

json theorem1(const VerifyConfig& cfg) {
  auto rng = make_stream(cfg.seed, 0);
  const Measure mu = cfg.measure ? *cfg.measure : Measure(random_cloud(rng, 2, 60));
  const auto d = dim(mu);
  const Vector m = mean(mu);
  const Measure centered = affine_image(mu, Matrix::Identity(d, d), -m);
  const double scale = data_scale(mu);
  const auto* emp = std::get_if<EmpiricalMeasure>(&mu);
  std::optional<Polygon2D> polygon;
  if (emp && d == 2) polygon = zonotope_polygon_2d(*emp);

  std::vector<double> alphas;
  for (int k = 1; k <= 20; ++k) alphas.push_back(0.05 * k);
  alphas.back() = 1.0;

  const auto grid = direction_grid(d, cfg.directions, cfg.seed);
  std::vector<DirectionErrors> errors(grid.size());
  for_each_task(grid.size(), cfg.workers, [&](std::size_t k) {
    const Direction& u = grid[k];
    auto& e = errors[k];
    e.symmetry = std::abs(support_zonoid(mu, u) - support_zonoid(mu, -u) - m.dot(u.vec()));
    double prev = std::numeric_limits<double>::infinity();
    for (double a : alphas) {
      const double h = support_trimmed(mu, {a, u});
      e.nesting = std::max(e.nesting, h - prev);
      prev = h;
      if (a < 1.0) {
        e.reflection = std::max(e.reflection, std::abs(a * support_trimmed(centered, {a, u}) -
                                                       (1 - a) * support_trimmed(centered, {1 - a, -u})));
        e.continuity = std::max(e.continuity, std::abs(support_trimmed(mu, {a + 1e-4, u}) - h));
      }
    }
    if (emp) {
      const Vector p = emp->points().transpose() * u.vec();
      e.closure = p.maxCoeff() - trimmed_boundary_point(mu, {1e-4, u}).dot(u.vec());
      // h(D_α,u) = (1/α) min_t [E(t + <X,u>)₊ - tα]; the minimum sits at a breakpoint t = -p_i.
      for (double a : {0.1, 0.25, 0.5, 0.8}) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < p.size(); ++i) {
          const double t = -p[i];
          best = std::min(best, std::hypot(t, 1.0) * support_lift_zonoid(mu, LiftDirection(t, u.vec())) -
                                    t * a);
        }
        e.section = std::max(e.section, std::abs(support_trimmed(mu, {a, u}) - best / a));
      }
      e.direct_sum = std::abs(support_zonoid(mu, u) - emp->weights().dot(p.cwiseMax(0.0)));
      if (polygon) e.polygon = std::abs(polygon->support(u.vec()) - support_zonoid(mu, u));
    }
  });

  DirectionErrors worst;
  for (const auto& e : errors) {
    worst.symmetry = std::max(worst.symmetry, e.symmetry);
    worst.nesting = std::max(worst.nesting, e.nesting);
    worst.reflection = std::max(worst.reflection, e.reflection);
    worst.continuity = std::max(worst.continuity, e.continuity);
    worst.closure = std::max(worst.closure, e.closure);
    worst.section = std::max(worst.section, e.section);
    worst.polygon = std::max(worst.polygon, e.polygon);
    worst.direct_sum = std::max(worst.direct_sum, e.direct_sum);
  }
  Report r;
  r.add("symmetry_about_half_mean", worst.symmetry, 1e-10 * scale);
  r.add("nesting", worst.nesting, 1e-12 * scale);
  r.add("centered_reflection", worst.reflection, 1e-10 * scale);
  r.add("hausdorff_continuity", worst.continuity, 1e-3 * scale);
  if (emp) {
    r.add("closure_of_d0_support_gap", worst.closure, 1e-6 * scale);
    r.add("lift_section_identity", worst.section, 1e-10 * scale);
    r.add("support_direct_sum", worst.direct_sum, 1e-12 * scale);
  }
  if (polygon) r.add("polygon_support", worst.polygon, 1e-10 * scale);
  return r.finish({{"suite", "theorem1"},
                   {"seed", cfg.seed},
                   {"measure", describe(mu)},
                   {"directions", grid.size()}});
}

const GaussianMeasure& gaussian_or_standard(const VerifyConfig& cfg, GaussianMeasure& storage) {
  if (cfg.measure) {
    if (const auto* g = std::get_if<GaussianMeasure>(&*cfg.measure)) return *g;
    throw Error(ErrorKind::Input, fmt::format("suite '{}' needs a Gaussian measure", cfg.suite));
  }
  storage = GaussianMeasure::standard(2);
  return storage;
}

json gaussian(const VerifyConfig& cfg) {
  GaussianMeasure storage = GaussianMeasure::standard(1);
  const auto& g = gaussian_or_standard(cfg, storage);
  const auto d = g.dim();
  auto rng = make_stream(cfg.seed, 0);
  Report r;
  r.add("radius_half", std::abs(normal::radius(0.5) - std::sqrt(2.0 / std::numbers::pi)), 1e-10);

  double chain = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double a = k / 100.0;
    chain = std::max(chain, std::abs(normal::g_ratio(normal::quantile(a)) - normal::radius(a)));
  }
  r.add("chain_identity", chain, 1e-10);

  const Measure standard = GaussianMeasure::standard(d);
  std::uniform_real_distribution<double> alpha_draw(0.01, 0.99);
  double ball = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double a = alpha_draw(rng);
    const Direction u(random_unit(rng, d));
    ball = std::max(ball, std::abs(support_trimmed(standard, {a, u}) - normal::radius(a)));
  }
  r.add("support_equals_radius", ball, 1e-9);

  std::uniform_real_distribution<double> radius_draw(0.05, 3.0);
  constexpr int kPoints = 10;
  double closure = 0.0;
  double worst_z = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    const Vector x = g.unwhiten(radius_draw(rng) * random_unit(rng, d));
    const auto rep = gaussian_represent(g, x);
    closure = std::max(closure, rep.residual / (1.0 + x.norm()));
    const auto mc = monte_carlo_barycenter(g, rep.halfspace, cfg.samples, stream_seed(cfg.seed, k + 1),
                                           cfg.workers);
    const Vector se = mc.standard_error();
    for (Eigen::Index i = 0; i < d; ++i) {
      worst_z = std::max(worst_z, std::abs(mc.estimate[i] - x[i]) / se[i]);
    }
  }
  r.add("closed_form_closure", closure, 1e-8);
  r.add("monte_carlo_closure_sigmas", worst_z, 4.0);
  return r.finish({{"suite", "gaussian"},
                   {"seed", cfg.seed},
                   {"measure", describe(Measure(g))},
                   {"samples", cfg.samples},
                   {"points", kPoints}});
}

json roundtrip(const VerifyConfig& cfg) {
  GaussianMeasure storage = GaussianMeasure::standard(1);
  const auto& g = gaussian_or_standard(cfg, storage);
  const Measure mu = g;
  const auto d = g.dim();
  constexpr int kPoints = 100;
  std::vector<std::array<double, 4>> errors(kPoints);
  for_each_task(kPoints, cfg.workers, [&](std::size_t k) {
    auto rng = make_stream(cfg.seed, k);
    std::uniform_real_distribution<double> radius_draw(0.05, 3.0);
    const Vector x = g.unwhiten(radius_draw(rng) * random_unit(rng, d));
    const double denom = std::max(1.0, x.norm());
    auto& e = errors[k];
    int slot = 0;
    for (auto kind : {CoordsKind::OffsetForm, CoordsKind::SupportForm, CoordsKind::DepthForm}) {
      const auto c = coords_from_point(mu, x, kind);
      e[static_cast<std::size_t>(slot++)] = (point_from_coords(mu, c) - x).norm() / denom;
    }
    const auto offset = coords_from_point(mu, x, CoordsKind::OffsetForm);
    const auto again = coords_from_point(mu, point_from_coords(mu, offset), CoordsKind::OffsetForm);
    e[3] = std::max(std::abs(again.scalar - offset.scalar) / std::max(1.0, std::abs(offset.scalar)),
                    (again.direction.vec() - offset.direction.vec()).norm());
  });
  std::array<double, 4> worst{};
  for (const auto& e : errors)
    for (std::size_t i = 0; i < 4; ++i) worst[i] = std::max(worst[i], e[i]);
  Report r;
  r.add("offset_round_trip", worst[0], 1e-7);
  r.add("support_round_trip", worst[1], 1e-7);
  r.add("depth_round_trip", worst[2], 1e-7);
  r.add("offset_uniqueness", worst[3], 1e-7);
  return r.finish({{"suite", "roundtrip"},
                   {"seed", cfg.seed},
                   {"measure", describe(mu)},
                   {"points", kPoints}});
}

json oracle(const VerifyConfig& cfg) {
  constexpr int kInstances = 50;
  struct Outcome {
    double gap = 0.0;
    double duality = 0.0;
  };
  std::vector<Outcome> outcomes(kInstances);
  for_each_task(kInstances, cfg.workers, [&](std::size_t k) {
    auto rng = make_stream(cfg.seed, k);
    const auto d = std::uniform_int_distribution<Eigen::Index>(1, 3)(rng);
    const auto n = std::uniform_int_distribution<Eigen::Index>(d + 1, 10)(rng);
    EmpiricalMeasure mu = random_cloud(rng, d, n);
    // Redraw the rare affinely degenerate cloud.
    for (;;) {
      try {
        require_full_affine_rank(mu);
        break;
      } catch (const Error&) {
        mu = random_cloud(rng, d, n);
      }
    }
    const Vector x = uniform_vector(rng, d, -1.2, 1.2);
    const auto cert = zonoid_depth(mu, x);
    outcomes[k].gap = std::abs(cert.depth - depth_bruteforce_oracle(mu, x));
    outcomes[k].duality = std::abs(cert.primal_objective - cert.dual_objective);
  });
  Outcome worst;
  for (const auto& o : outcomes) {
    worst.gap = std::max(worst.gap, o.gap);
    worst.duality = std::max(worst.duality, o.duality);
  }
  Matrix two(1, 2);
  two << -1.0, 1.0;
  const double example = zonoid_depth(EmpiricalMeasure::uniform(two), Vector::Constant(1, 0.5)).depth;
  Report r;
  r.add("lp_vs_bruteforce", worst.gap, 1e-6);
  r.add("strong_duality", worst.duality, 1e-9);
  r.add("two_atom_example", std::abs(example - 2.0 / 3.0), 1e-12);
  return r.finish({{"suite", "oracle"}, {"seed", cfg.seed}, {"instances", kInstances}});
}

}  // namespace

json run_verify(const VerifyConfig& config) {
  if (config.suite == "theorem1") return theorem1(config);
  if (config.suite == "gaussian") return gaussian(config);
  if (config.suite == "roundtrip") return roundtrip(config);
  if (config.suite == "oracle") return oracle(config);
  throw Error(ErrorKind::Input,
              fmt::format("unknown suite '{}' (theorem1, gaussian, roundtrip, oracle)", config.suite));
}

}  // namespace liftzonoid::cli
