#pragma once

#include <cstdint>

#include "liftzonoid/measures.hpp"
#include "liftzonoid/representation.hpp"

namespace liftzonoid {

// Zonoid depth under N(m, LLᵀ): r⁻¹(‖L⁻¹(x - m)‖), and 1 at the mean.
double gaussian_depth(const GaussianMeasure& mu, const Vector& x);

// Half-space H with B_H(μ) = x. In whitened coordinates z = L⁻¹(x - m) it is
// {z' : <z', z/‖z‖> >= -G⁻¹(‖z‖)}; the result is mapped back to x-space.
// x = m gives the whole space.
RepresentationResult gaussian_represent(const GaussianMeasure& mu, const Vector& x);

struct MonteCarloBarycenter {
  Vector estimate;
  Vector sigma;          // per-component sd of the ratio estimator's influence values
  std::size_t samples = 0;
  std::size_t included = 0;
  Vector standard_error() const { return sigma / std::sqrt(static_cast<double>(samples)); }
};

// Sampled B_H(μ) from `samples` draws; deterministic in (seed) for any worker count.
MonteCarloBarycenter monte_carlo_barycenter(const GaussianMeasure& mu, const HalfSpace& h,
                                            std::size_t samples, std::uint64_t seed,
                                            int workers = 1);

}  // namespace liftzonoid
