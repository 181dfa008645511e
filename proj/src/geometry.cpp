#include "liftzonoid/geometry.hpp"

#include <cmath>
#include <fmt/format.h>

#include "liftzonoid/config.hpp"
#include "liftzonoid/error.hpp"

namespace liftzonoid {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::DegenerateMeasure: return "DegenerateMeasure";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::NoDual: return "NoDual";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::OutsideSupport: return "OutsideSupport";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::MeanPoint: return "MeanPoint";
    case ErrorKind::Input: return "InputError";
  }
  return "Unknown";
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorKind::NonFinite, fmt::format("{} has non-finite entries", what));
  }
}

void require_dim(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{}: expected dimension {}, got {}", what, expected, got));
  }
}

Direction::Direction(const Vector& v) {
  if (v.size() < 1) throw Error(ErrorKind::Domain, "direction must have dimension >= 1");
  require_finite(v, "direction");
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::Domain, "direction must be nonzero");
  u_ = v / norm;
}

Direction Direction::exact(const Vector& v) {
  if (v.size() < 1) throw Error(ErrorKind::Domain, "direction must have dimension >= 1");
  require_finite(v, "direction");
  if (std::abs(v.norm() - 1.0) > default_tolerances().unit_norm) {
    throw Error(ErrorKind::Domain,
                fmt::format("direction is not unit length (norm {})", v.norm()));
  }
  return Direction(v, Unchecked{});
}

}  // namespace liftzonoid
