#pragma once

#include <cstdint>
#include <vector>

#include "liftzonoid/geometry.hpp"

namespace liftzonoid {

// Deterministic quasi-uniform unit directions.
//   d = 1: {+1, -1} regardless of count.
//   d = 2: count equally spaced angles, rotated by a golden-ratio offset of the seed.
//   d = 3: Fibonacci sphere, spun about the z axis by the seed.
//   d > 3: normalized Gaussian draws from a seeded stream.
// seed = 0 gives the unrotated grid (d = 2 then starts at (1, 0)).
std::vector<Direction> direction_grid(Eigen::Index dim, int count, std::uint64_t seed = 0);

}  // namespace liftzonoid
