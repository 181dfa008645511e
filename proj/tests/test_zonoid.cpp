#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "liftzonoid/directions.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/normal.hpp"
#include "liftzonoid/zonoid.hpp"
#include "oracles.hpp"

using namespace liftzonoid;
using doctest::Approx;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

EmpiricalMeasure from_cols(int d, std::initializer_list<double> xs) {
  const auto n = static_cast<Eigen::Index>(xs.size()) / d;
  Matrix p(d, n);
  auto it = xs.begin();
  for (Eigen::Index j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) p(i, j) = *it++;
  return EmpiricalMeasure::uniform(p);
}

std::vector<std::pair<double, double>> projected(const EmpiricalMeasure& mu, const Vector& u) {
  std::vector<std::pair<double, double>> out;
  for (Eigen::Index i = 0; i < mu.size(); ++i) out.emplace_back(mu.atom(i).dot(u), mu.weights()[i]);
  return out;
}

constexpr double kPhi0 = 0.3989422804014326779;
constexpr double kSqrt2OverPi = 0.7978845608028653559;

}  // namespace

TEST_CASE("zonoid support") {
  const Measure tri = from_cols(2, {1, 0, 0, 1, -1, -1});
  CHECK(support_zonoid(tri, Direction(vec({1, 0}))) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(support_zonoid(GaussianMeasure::standard(3), Direction(vec({1, 2, 3}))) ==
        Approx(kPhi0).epsilon(1e-15));
  const Direction u(vec({0.3, -0.7}));
  CHECK(std::abs(support_zonoid(tri, u) - support_zonoid(tri, -u)) < 1e-15);
}

TEST_CASE("Gaussian zonoid support against quadrature") {
  Matrix s(2, 2);
  s << 1.5, -0.4, -0.4, 0.8;
  const Measure g = GaussianMeasure::from_covariance(vec({0.7, -0.2}), s);
  const Direction u(vec({1.0, 2.0}));
  const auto law = project(std::get<GaussianMeasure>(g), u);
  const double expected =
      oracle::gauss_expect([&](double z) { return std::max(law.mean + law.sd * z, 0.0); },
                           -law.mean / law.sd);
  CHECK(support_zonoid(g, u) == Approx(expected).epsilon(1e-9));
}

TEST_CASE("lift zonoid support") {
  std::mt19937_64 rng(1);
  const Measure e = EmpiricalMeasure::uniform(oracle::random_points(rng, 2, 9));
  CHECK(support_lift_zonoid(e, LiftDirection(1.0, Vector::Zero(2))) == Approx(1.0));
  CHECK(support_lift_zonoid(GaussianMeasure::standard(2), LiftDirection(1.0, Vector::Zero(2))) ==
        Approx(1.0));

  const Measure two = from_cols(1, {-1, 1});
  CHECK(support_lift_zonoid(two, LiftDirection(0.0, vec({1.0}))) == Approx(0.5));
  // (t, u) = (1, 1)/√2: ½(0)₊ + ½(2/√2)₊.
  CHECK(support_lift_zonoid(two, LiftDirection(1.0, vec({1.0}))) ==
        Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));

  CHECK(support_lift_zonoid(GaussianMeasure::standard(1), LiftDirection(0.0, vec({3.0}))) ==
        Approx(kPhi0).epsilon(1e-15));
  CHECK_THROWS_AS(LiftDirection(0.0, Vector::Zero(2)), Error);
}

TEST_CASE("Gaussian lift support against quadrature") {
  const Measure g = GaussianMeasure::from_covariance(vec({0.4}), Matrix::Constant(1, 1, 2.0));
  const LiftDirection w(-0.3, vec({0.9}));
  const double expected = oracle::gauss_expect(
      [&](double z) { return std::max(w.t() + w.u()[0] * (0.4 + std::sqrt(2.0) * z), 0.0); },
      -(w.t() / w.u()[0] + 0.4) / std::sqrt(2.0));
  CHECK(support_lift_zonoid(g, w) == Approx(expected).epsilon(1e-9));
}

TEST_CASE("trimmed support and boundary points") {
  const Measure two = from_cols(1, {-1, 1});
  const Direction plus(vec({1.0}));
  CHECK(support_trimmed(two, {2.0 / 3.0, plus}) == Approx(0.5).epsilon(1e-15));
  CHECK(trimmed_boundary_point(two, {2.0 / 3.0, plus})[0] == Approx(0.5).epsilon(1e-15));

  std::mt19937_64 rng(2);
  const auto e = EmpiricalMeasure::uniform(oracle::random_points(rng, 3, 12));
  const Direction u(oracle::random_unit(rng, 3));
  CHECK(support_trimmed(e, {1.0, u}) == Approx(e.mean().dot(u.vec())).epsilon(1e-14));
  CHECK((trimmed_boundary_point(e, {1.0, u}) - e.mean()).norm() < 1e-14);

  const Measure g = GaussianMeasure::standard(2);
  CHECK(support_trimmed(g, {0.5, u.dim() == 2 ? u : Direction(vec({1, 1}))}) ==
        Approx(kSqrt2OverPi).epsilon(1e-15));
  const Direction v(vec({-0.6, 0.8}));
  for (double alpha : {0.05, 0.3, 0.5, 0.9}) {
    const Vector b = trimmed_boundary_point(g, {alpha, v});
    CHECK((b - normal::radius(alpha) * v.vec()).norm() < 1e-14);
  }
  CHECK(trimmed_boundary_point(g, {1.0, v}).norm() == 0.0);
  CHECK_THROWS_AS(TrimmedRegionQuery(0.0, v), Error);
  CHECK_THROWS_AS(TrimmedRegionQuery(1.5, v), Error);
}

TEST_CASE("trimmed support matches an independent sweep") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.001, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix pts = oracle::random_points(rng, 2, 15);
    Vector w = (oracle::random_points(rng, 1, 15).row(0).transpose().array() + 1.5).matrix();
    const auto mu = EmpiricalMeasure::normalized(pts, w);
    const Direction u(oracle::random_unit(rng, 2));
    const double alpha = uni(rng);
    const double expected = oracle::upper_alpha_mean(projected(mu, u.vec()), alpha);
    const double got = support_trimmed(mu, {alpha, u});
    CHECK(got == Approx(expected).epsilon(1e-12));
    CHECK(trimmed_boundary_point(mu, {alpha, u}).dot(u.vec()) == Approx(got).epsilon(1e-12));
  }
}

TEST_CASE("tied marginal atoms share mass, independent of input order") {
  // (1, 1) and (1, -1) tie along u = (1, 0).
  const auto a = from_cols(2, {1, 1, 1, -1, -1, 0, -2, 0});
  const auto b = from_cols(2, {-2, 0, 1, -1, -1, 0, 1, 1});
  const Direction u(vec({1, 0}));
  const Vector pa = trimmed_boundary_point(a, {0.3, u});
  const Vector pb = trimmed_boundary_point(b, {0.3, u});
  CHECK((pa - pb).norm() < 1e-15);
  CHECK(pa[0] == Approx(1.0));
  CHECK(std::abs(pa[1]) < 1e-15);
}

TEST_CASE("Gaussian boundary points with general covariance") {
  Matrix s(3, 3);
  s << 2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5;
  const Measure g = GaussianMeasure::from_covariance(vec({1, 0, -1}), s);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Direction u(oracle::random_unit(rng, 3));
    const double alpha = 0.05 + 0.9 * k / 20.0;
    const Vector b = trimmed_boundary_point(g, {alpha, u});
    CHECK(b.dot(u.vec()) == Approx(support_trimmed(g, {alpha, u})).epsilon(1e-12));
    // On the ellipsoid: ‖L⁻¹(b - m)‖ = r(α).
    CHECK(std::get<GaussianMeasure>(g).whiten(b).norm() == Approx(normal::radius(alpha)).epsilon(1e-12));
  }
}

TEST_CASE("zonotope polygon examples") {
  const auto seg = zonotope_polygon_2d(from_cols(2, {1, 0}));
  REQUIRE(seg.vertices.size() == 2);
  CHECK(seg.vertices[0] == Eigen::Vector2d(0, 0));
  CHECK(seg.vertices[1] == Eigen::Vector2d(1, 0));

  const auto par = zonotope_polygon_2d(from_cols(2, {1, 0, 0, 1}));
  REQUIRE(par.vertices.size() == 4);
  CHECK(par.vertices[0] == Eigen::Vector2d(0, 0));
  CHECK(par.vertices[1] == Eigen::Vector2d(0.5, 0));
  CHECK(par.vertices[2] == Eigen::Vector2d(0.5, 0.5));
  CHECK(par.vertices[3] == Eigen::Vector2d(0, 0.5));

  const auto merged = zonotope_polygon_2d(from_cols(2, {1, 0, -1, 0}));
  REQUIRE(merged.vertices.size() == 2);
  CHECK(merged.vertices[0] == Eigen::Vector2d(-0.5, 0));
  CHECK(merged.vertices[1] == Eigen::Vector2d(0.5, 0));

  CHECK_THROWS_AS(zonotope_polygon_2d(from_cols(3, {1, 0, 0})), Error);
}

TEST_CASE("zonotope polygon support equals the zonoid support") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial;
    Vector w = (oracle::random_points(rng, 1, n).row(0).transpose().array() + 1.2).matrix();
    const auto mu = EmpiricalMeasure::normalized(oracle::random_points(rng, 2, n, -3, 3), w);
    const auto poly = zonotope_polygon_2d(mu);
    CHECK(poly.vertices.size() <= static_cast<size_t>(2 * n));
    double worst = 0.0;
    for (const auto& u : direction_grid(2, 360, 0)) {
      worst = std::max(worst, std::abs(poly.support(u.vec()) - support_zonoid(mu, u)));
    }
    CHECK(worst <= 1e-10);
    // Counterclockwise and strictly convex.
    const auto& v = poly.vertices;
    for (size_t i = 0; v.size() > 2 && i < v.size(); ++i) {
      const Eigen::Vector2d e1 = v[(i + 1) % v.size()] - v[i];
      const Eigen::Vector2d e2 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
      CHECK(e1.x() * e2.y() - e1.y() * e2.x() > 0.0);
    }
  }
}

TEST_CASE("Hausdorff support distance") {
  const Measure two = from_cols(1, {-1, 1});
  CHECK(hausdorff_support_distance(two, 0.5, 0.5, 2) == 0.0);
  CHECK(hausdorff_support_distance(two, 0.5, 0.75, 2) == Approx(2.0 / 3.0).epsilon(1e-15));
  const Measure g = GaussianMeasure::standard(2);
  CHECK(hausdorff_support_distance(g, 0.2, 0.7, 16, 9) ==
        Approx(normal::radius(0.2) - normal::radius(0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(hausdorff_support_distance(g, 0.2, 0.7, 3), Error);
}

TEST_CASE("direction grids") {
  CHECK(direction_grid(1, 50).size() == 2);
  const auto g2 = direction_grid(2, 8, 0);
  CHECK(g2.size() == 8);
  CHECK((g2[0].vec() - vec({1, 0})).norm() < 1e-15);
  const auto s1 = direction_grid(3, 100, 7);
  const auto s2 = direction_grid(3, 100, 7);
  for (size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].vec() == s2[i].vec());
  for (const auto& u : direction_grid(5, 40, 3)) CHECK(u.vec().norm() == Approx(1.0).epsilon(1e-14));
}

// Structural properties on random clouds.

TEST_CASE("support functions are subadditive") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Measure mu = EmpiricalMeasure::uniform(oracle::random_points(rng, 3, 20));
    const Vector v1 = 2.0 * oracle::random_unit(rng, 3);
    const Vector v2 = 0.5 * oracle::random_unit(rng, 3);
    auto h = [&](const Vector& v) { return v.norm() * support_zonoid(mu, Direction(v)); };
    CHECK(h(v1 + v2) <= h(v1) + h(v2) + 1e-14);
    auto ht = [&](const Vector& v) { return v.norm() * support_trimmed(mu, {0.3, Direction(v)}); };
    CHECK(ht(v1 + v2) <= ht(v1) + ht(v2) + 1e-14);
  }
}

TEST_CASE("zonoid symmetry about half the mean") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = EmpiricalMeasure::uniform(oracle::random_points(rng, 4, 30, -1, 2));
    const Measure mu = e;
    for (const auto& u : direction_grid(4, 50, trial)) {
      CHECK(support_zonoid(mu, u) - support_zonoid(mu, -u) ==
            Approx(e.mean().dot(u.vec())).epsilon(1e-10));
    }
  }
}

TEST_CASE("trimmed regions are nested") {
  std::mt19937_64 rng(8);
  const Measure mu = EmpiricalMeasure::uniform(oracle::random_points(rng, 2, 40));
  for (const auto& u : direction_grid(2, 64, 1)) {
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha = 0.01; alpha <= 1.0; alpha += 0.01) {
      const double h = support_trimmed(mu, {alpha, u});
      CHECK(h <= prev + 1e-14);
      prev = h;
    }
  }
}

TEST_CASE("centered reflection α·h(D_α,u) = (1-α)·h(D_{1-α},-u)") {
  std::mt19937_64 rng(9);
  Matrix pts = oracle::random_points(rng, 3, 25);
  Vector w = (oracle::random_points(rng, 1, 25).row(0).transpose().array() + 2.0).matrix();
  w /= w.sum();
  pts.colwise() -= pts * w;
  const Measure mu = EmpiricalMeasure(pts, w);
  for (const auto& u : direction_grid(3, 60, 2)) {
    for (double alpha = 0.05; alpha < 1.0; alpha += 0.05) {
      CHECK(alpha * support_trimmed(mu, {alpha, u}) ==
            Approx((1 - alpha) * support_trimmed(mu, {1 - alpha, -u})).epsilon(1e-10));
    }
  }
}

TEST_CASE("trimmed support is the Legendre section of the lift zonoid") {
  // h(D_α,u) = (1/α)·min_t [E(t + <X,u>)₊ - tα]; the minimum sits at t = -<x_i,u>.
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto e = EmpiricalMeasure::uniform(oracle::random_points(rng, 2, 11));
    const Measure mu = e;
    const Direction u(oracle::random_unit(rng, 2));
    for (double alpha : {0.1, 0.37, 0.5, 0.81}) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < e.size(); ++i) {
        const double t = -e.atom(i).dot(u.vec());
        const double norm = std::hypot(t, 1.0);
        best = std::min(best, norm * support_lift_zonoid(mu, LiftDirection(t, u.vec())) - t * alpha);
      }
      CHECK(support_trimmed(mu, {alpha, u}) == Approx(best / alpha).epsilon(1e-12));
    }
  }
}

TEST_CASE("boundary points converge to the farthest atom as α → 0") {
  std::mt19937_64 rng(12);
  const auto e = EmpiricalMeasure::uniform(oracle::random_points(rng, 2, 30));
  const Measure mu = e;
  for (const auto& u : direction_grid(2, 24, 4)) {
    Eigen::Index far = 0;
    (e.points().transpose() * u.vec()).maxCoeff(&far);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double gap = (trimmed_boundary_point(mu, {alpha, u}) - e.atom(far)).norm();
      CHECK(gap <= prev + 1e-15);
      prev = gap;
    }
    CHECK(prev < 1e-6);
  }
}

TEST_CASE("distinct small measures differ in some lift support value") {
  const Measure a = from_cols(1, {0, 1});
  const Measure b = from_cols(1, {0.5, 0.5});
  const Measure c = EmpiricalMeasure(Matrix::Constant(1, 2, 0.0) + (Matrix(1, 2) << 0, 1).finished(),
                                     vec({0.25, 0.75}));
  for (const auto& [p, q] : {std::pair{&a, &b}, std::pair{&a, &c}, std::pair{&b, &c}}) {
    double gap = 0.0;
    for (double t = -2.0; t <= 2.0; t += 0.05) {
      for (double s : {-1.0, 1.0}) {
        const LiftDirection w(t, vec({s}));
        gap = std::max(gap, std::abs(support_lift_zonoid(*p, w) - support_lift_zonoid(*q, w)));
      }
    }
    CHECK(gap > 1e-3);
  }
}
