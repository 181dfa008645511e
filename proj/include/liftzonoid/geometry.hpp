#pragma once

#include <Eigen/Dense>
#include <limits>

namespace liftzonoid {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A unit vector. Construction normalizes; a zero or non-finite input throws.
class Direction {
 public:
  explicit Direction(const Vector& v);

  // Accepts v only if it is already unit length within the configured tolerance.
  static Direction exact(const Vector& v);

  const Vector& vec() const noexcept { return u_; }
  Eigen::Index dim() const noexcept { return u_.size(); }
  double operator[](Eigen::Index i) const { return u_[i]; }
  Direction operator-() const { return Direction(-u_, Unchecked{}); }

 private:
  struct Unchecked {};
  Direction(Vector v, Unchecked) : u_(std::move(v)) {}
  Vector u_;
};

// {y : <y, u> >= offset}. offset == -inf encodes the whole space.
struct HalfSpace {
  Direction direction;
  double offset;

  static HalfSpace whole_space(const Direction& u) {
    return {u, -std::numeric_limits<double>::infinity()};
  }
  // {y : <y, u> <= b} rewritten in the canonical ">=" form.
  static HalfSpace at_most(const Direction& u, double b) { return {-u, -b}; }

  bool is_whole_space() const noexcept {
    return offset == -std::numeric_limits<double>::infinity();
  }
  bool contains(const Vector& y) const { return y.dot(direction.vec()) >= offset; }
};

void require_finite(const Vector& v, const char* what);
void require_dim(Eigen::Index expected, Eigen::Index got, const char* what);

}  // namespace liftzonoid
