#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liftzonoid {

enum class ErrorKind {
  DimensionMismatch,
  Domain,
  NonFinite,
  ZeroMass,
  DegenerateMeasure,
  WrongDimension,
  NoDual,
  TooLarge,
  OutsideSupport,
  NotConverged,
  NoSolution,
  MeanPoint,
  Input,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace liftzonoid
