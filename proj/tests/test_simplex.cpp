#include <doctest.h>

#include <bit>
#include <random>

#include "liftzonoid/simplex.hpp"

using namespace liftzonoid;
using namespace liftzonoid::lp;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Enumerates every basis with the nonbasic columns at a finite bound.
// Requires every variable to be boxed. Returns +inf if infeasible.
double brute_force_minimum(const LinearProgram& lp) {
  const auto m = lp.a.rows(), n = lp.a.cols();
  double best = kInf;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    std::vector<Eigen::Index> basis, rest;
    for (Eigen::Index j = 0; j < n; ++j) ((mask >> j) & 1u ? basis : rest).push_back(j);
    Matrix b(m, m);
    for (Eigen::Index k = 0; k < m; ++k) b.col(k) = lp.a.col(basis[k]);
    Eigen::FullPivLU<Matrix> lu(b);
    if (lu.rank() < m) continue;
    for (unsigned side = 0; side < (1u << rest.size()); ++side) {
      Vector x = Vector::Zero(n);
      for (size_t k = 0; k < rest.size(); ++k) x[rest[k]] = (side >> k) & 1u ? lp.upper[rest[k]] : lp.lower[rest[k]];
      const Vector xb = lu.solve(lp.b - lp.a * x);
      bool ok = true;
      for (Eigen::Index k = 0; k < m; ++k) {
        x[basis[k]] = xb[k];
        ok = ok && xb[k] >= lp.lower[basis[k]] - 1e-9 && xb[k] <= lp.upper[basis[k]] + 1e-9;
      }
      if (ok) best = std::min(best, lp.c.dot(x));
    }
  }
  return best;
}

void check_certificate(const LinearProgram& lp, const Solution& s) {
  REQUIRE(s.status == Status::Optimal);
  CHECK((lp.a * s.x - lp.b).norm() <= 1e-9 * (1 + lp.b.norm()));
  for (Eigen::Index j = 0; j < s.x.size(); ++j) {
    CHECK(s.x[j] >= lp.lower[j] - 1e-9);
    CHECK(s.x[j] <= lp.upper[j] + 1e-9);
    if (s.basic[j]) continue;
    // Nonbasic reduced cost signs: >= 0 at the lower bound, <= 0 at the upper bound.
    if (std::abs(s.x[j] - lp.lower[j]) < 1e-9 && lp.lower[j] < lp.upper[j]) CHECK(s.reduced_costs[j] >= -1e-8);
    if (std::abs(s.x[j] - lp.upper[j]) < 1e-9 && lp.lower[j] < lp.upper[j]) CHECK(s.reduced_costs[j] <= 1e-8);
  }
  CHECK((lp.c - lp.a.transpose() * s.duals - s.reduced_costs).norm() < 1e-9);
  CHECK(s.objective == Approx(lp.c.dot(s.x)).epsilon(1e-12));
  CHECK(std::abs(s.objective - s.dual_objective) <= 1e-8 * (1 + std::abs(s.objective)));
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("textbook LP with slacks") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18.
  LinearProgram lp;
  lp.a.resize(3, 5);
  lp.a << 1, 0, 1, 0, 0, 0, 2, 0, 1, 0, 3, 2, 0, 0, 1;
  lp.b = vec({4, 12, 18});
  lp.c = vec({-3, -5, 0, 0, 0});
  lp.lower = Vector::Zero(5);
  lp.upper = Vector::Constant(5, kInf);
  const auto s = solve(lp);
  check_certificate(lp, s);
  CHECK(s.objective == Approx(-36.0));
  CHECK(s.x[0] == Approx(2.0));
  CHECK(s.x[1] == Approx(6.0));
  CHECK((s.duals - vec({0, -1.5, -1})).norm() < 1e-9);
}

TEST_CASE("bounded variables") {
  // min -x1 - 2x2  s.t.  x1 + x2 + s = 1.5,  0 <= x <= 1, s >= 0.
  LinearProgram lp;
  lp.a = (Matrix(1, 3) << 1, 1, 1).finished();
  lp.b = vec({1.5});
  lp.c = vec({-1, -2, 0});
  lp.lower = Vector::Zero(3);
  lp.upper = vec({1, 1, kInf});
  const auto s = solve(lp);
  check_certificate(lp, s);
  CHECK(s.objective == Approx(-2.5));
  CHECK(s.x[1] == Approx(1.0));
  CHECK(s.x[0] == Approx(0.5));
}

TEST_CASE("free and fixed variables") {
  LinearProgram lp;
  lp.a = (Matrix(2, 3) << 1, 1, 0, 0, 1, 1).finished();
  lp.b = vec({-2, 3});
  lp.c = vec({1, 0, 1});
  lp.lower = vec({-kInf, 4, -kInf});
  lp.upper = vec({kInf, 4, kInf});
  const auto s = solve(lp);
  check_certificate(lp, s);
  CHECK(s.x[0] == Approx(-6.0));
  CHECK(s.x[2] == Approx(-1.0));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram bad;
  bad.a = (Matrix(1, 2) << 1, 1).finished();
  bad.b = vec({3});
  bad.c = vec({1, 1});
  bad.lower = Vector::Zero(2);
  bad.upper = Vector::Ones(2);
  CHECK(solve(bad).status == Status::Infeasible);

  LinearProgram open;
  open.a = (Matrix(1, 2) << 1, -1).finished();
  open.b = vec({0});
  open.c = vec({-1, 0});
  open.lower = Vector::Zero(2);
  open.upper = Vector::Constant(2, kInf);
  CHECK(solve(open).status == Status::Unbounded);
}

TEST_CASE("redundant equality rows") {
  LinearProgram lp;
  lp.a = (Matrix(3, 3) << 1, 1, 1, 2, 2, 2, 1, -1, 0).finished();
  lp.b = vec({1, 2, 0});
  lp.c = vec({1, 1, -1});
  lp.lower = Vector::Zero(3);
  lp.upper = Vector::Ones(3);
  const auto s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective == Approx(-1.0));
  CHECK((lp.a * s.x - lp.b).norm() < 1e-9);
}

TEST_CASE("random boxed LPs agree with vertex enumeration") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> rows(1, 4), extra(1, 5);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = rows(rng), n = m + extra(rng);
    LinearProgram lp;
    lp.a = Matrix::NullaryExpr(m, n, [&] { return z(rng); });
    lp.c = Vector::NullaryExpr(n, [&] { return z(rng); });
    lp.lower = Vector::NullaryExpr(n, [&] { return -std::abs(z(rng)); });
    lp.upper = lp.lower + Vector::NullaryExpr(n, [&] { return std::abs(z(rng)); });
    // Half of the instances have a known feasible point.
    if (trial % 2 == 0) {
      const Vector x0 = lp.lower + 0.5 * (lp.upper - lp.lower);
      lp.b = lp.a * x0;
    } else {
      lp.b = Vector::NullaryExpr(m, [&] { return 2.0 * z(rng); });
    }
    const double expected = brute_force_minimum(lp);
    const auto s = solve(lp);
    if (std::isinf(expected)) {
      CHECK(s.status == Status::Infeasible);
      ++infeasible;
    } else {
      check_certificate(lp, s);
      CHECK(s.objective == Approx(expected).epsilon(1e-8));
      ++optimal;
    }
  }
  CHECK(optimal > 150);
  CHECK(infeasible > 10);
}

TEST_CASE("highly degenerate LP terminates") {
  // Many atoms share the same coordinates, which gives many zero-length pivots.
  const int n = 60;
  LinearProgram lp;
  lp.a = Matrix::Zero(2, n);
  for (int j = 0; j < n; ++j) {
    lp.a(0, j) = (j % 3) - 1.0;
    lp.a(1, j) = ((j / 3) % 2) - 0.5;
  }
  lp.b = Vector::Zero(2);
  lp.c = -Vector::Ones(n);
  lp.lower = Vector::Zero(n);
  lp.upper = Vector::Constant(n, 1.0 / n);
  const auto s = solve(lp);
  check_certificate(lp, s);
  CHECK(s.objective == Approx(-1.0));
}
