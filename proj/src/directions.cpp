#include "liftzonoid/directions.hpp"

#include <cmath>
#include <numbers>

#include "liftzonoid/error.hpp"
#include "liftzonoid/rng.hpp"

namespace liftzonoid {
namespace {

constexpr double kGoldenConjugate = 0.6180339887498948482;

double seed_fraction(std::uint64_t seed) {
  if (seed == 0) return 0.0;
  const double x = static_cast<double>(seed % 1000003) * kGoldenConjugate;
  return x - std::floor(x);
}

}  // namespace

std::vector<Direction> direction_grid(Eigen::Index dim, int count, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorKind::Domain, "direction grid needs dimension >= 1");
  std::vector<Direction> grid;
  if (dim == 1) {
    grid.emplace_back(Vector::Constant(1, 1.0));
    grid.emplace_back(Vector::Constant(1, -1.0));
    return grid;
  }
  if (count < 1) throw Error(ErrorKind::Domain, "direction grid needs count >= 1");
  grid.reserve(static_cast<size_t>(count));
  const double two_pi = 2.0 * std::numbers::pi;
  const double offset = seed_fraction(seed);
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double theta = two_pi * (i + offset) / count;
      Vector v(2);
      v << std::cos(theta), std::sin(theta);
      grid.emplace_back(v);
    }
    return grid;
  }
  if (dim == 3) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = i * golden_angle + two_pi * offset;
      Vector v(3);
      v << rho * std::cos(phi), rho * std::sin(phi), z;
      grid.emplace_back(v);
    }
    return grid;
  }
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> normal;
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    do {
      for (Eigen::Index k = 0; k < dim; ++k) v[k] = normal(rng);
    } while (v.norm() < 1e-8);
    grid.emplace_back(v);
  }
  return grid;
}

}  // namespace liftzonoid
