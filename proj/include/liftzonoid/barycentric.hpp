#pragma once

#include <cstdint>
#include <string_view>

#include "liftzonoid/config.hpp"
#include "liftzonoid/measures.hpp"
#include "liftzonoid/representation.hpp"

namespace liftzonoid {

// Three equivalent encodings of a point x ≠ mean by a scalar and the outer
// normal u of its trimmed region: offset a of the half-space with barycenter
// x, support value h = <x, u>, or depth α(x).
enum class CoordsKind { OffsetForm, SupportForm, DepthForm };

std::string_view to_string(CoordsKind kind);
CoordsKind parse_coords_kind(std::string_view name);  // "offset" | "support" | "depth"

struct BarycentricCoords {
  CoordsKind kind;
  double scalar;
  Direction direction;
};

// Finds H with B_H(μ) = x.
//   Gaussian: closed form, one Gauss-Newton polish if the residual is off.
//   Empirical: depth LP gives α and u, a = upper_quantile(μ, u, α); atoms on
//   the hyperplane {<·,u> = a} enter with the LP's fractional weights, and
//   unique = false whenever any atom is fractional or the dual is degenerate.
// Errors: OutsideSupport (depth below Tolerances::min_alpha or x on the hull
// boundary), DegenerateMeasure, NotConverged.
RepresentationResult represent(const Measure& mu, const Vector& x,
                               const Tolerances& tol = default_tolerances());

// One Gauss-Newton step on (u, a) for ‖B_H(μ) - x‖², forward differences with step 1e-5.
RepresentationResult refine_representation(const Measure& mu, const Vector& x,
                                           const HalfSpace& start);

BarycentricCoords coords_from_point(const Measure& mu, const Vector& x, CoordsKind kind,
                                    const Tolerances& tol = default_tolerances());

Vector point_from_coords(const Measure& mu, const BarycentricCoords& coords);

struct SymmetricDifference {
  double mass = 0.0;
  double std_error = 0.0;  // zero when computed in closed form
  bool exact = true;
};

// μ(H Δ G). Gaussian pairs with non-parallel normals are sampled.
SymmetricDifference verify_uniqueness(const Measure& mu, const HalfSpace& h, const HalfSpace& g,
                                      std::size_t samples = 1'000'000, std::uint64_t seed = 0,
                                      int workers = 1);

}  // namespace liftzonoid
