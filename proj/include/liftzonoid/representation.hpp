#pragma once

#include <string_view>

#include "liftzonoid/geometry.hpp"

namespace liftzonoid {

enum class RepresentationMethod { LpDual, ClosedForm, Refined };

std::string_view to_string(RepresentationMethod method);

// x = B_H(μ) for the returned half-space, with the achieved residual.
struct RepresentationResult {
  HalfSpace halfspace;
  double alpha = 1.0;
  double residual = 0.0;
  bool unique = true;
  double boundary_mass = 0.0;  // mass on the bounding hyperplane (empirical only)
  RepresentationMethod method = RepresentationMethod::ClosedForm;
};

}  // namespace liftzonoid
