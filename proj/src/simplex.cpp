#include "liftzonoid/simplex.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "liftzonoid/error.hpp"

namespace liftzonoid::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Place { Basic, AtLower, AtUpper, Free };

class Solver {
 public:
  Solver(const LinearProgram& p, const Options& o)
      : p_(p), opt_(o), m_(p.a.rows()), n_(p.a.cols()), total_(n_ + m_) {
    lower_.resize(total_);
    upper_.resize(total_);
    lower_.head(n_) = p.lower;
    upper_.head(n_) = p.upper;
    lower_.tail(m_).setZero();
    upper_.tail(m_).setConstant(kInf);
    x_ = Vector::Zero(total_);
    place_.assign(static_cast<size_t>(total_), Place::AtLower);
    sign_ = Vector::Ones(m_);
    limit_ = opt_.max_iterations > 0 ? opt_.max_iterations
                                     : static_cast<int>(50 * (m_ + n_) + 1000);
  }

  Solution run() {
    start();
    Solution out;
    Vector phase_one_cost = Vector::Zero(total_);
    phase_one_cost.tail(m_).setOnes();
    Status status = iterate(phase_one_cost);
    const double infeasibility = x_.tail(m_).sum();
    const double scale = std::max(1.0, p_.b.lpNorm<Eigen::Infinity>());
    if (status == Status::IterationLimit) return finish(status, out);
    if (infeasibility > opt_.feasibility * scale) return finish(Status::Infeasible, out);

    upper_.tail(m_).setZero();
    for (Eigen::Index j = n_; j < total_; ++j) {
      if (place_[j] != Place::Basic) x_[j] = 0.0;
    }
    Vector cost = Vector::Zero(total_);
    cost.head(n_) = p_.c;
    status = iterate(cost);
    cost_ = cost;
    return finish(status, out);
  }

 private:
  // A_j for any j, artificials being signed unit columns.
  Vector full_column(Eigen::Index j) const {
    if (j < n_) return p_.a.col(j);
    Vector e = Vector::Zero(m_);
    e[j - n_] = sign_[j - n_];
    return e;
  }

  void start() {
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (std::isfinite(lower_[j])) {
        x_[j] = lower_[j];
        place_[j] = Place::AtLower;
      } else if (std::isfinite(upper_[j])) {
        x_[j] = upper_[j];
        place_[j] = Place::AtUpper;
      } else {
        x_[j] = 0.0;
        place_[j] = Place::Free;
      }
    }
    const Vector residual = p_.b - p_.a * x_.head(n_);
    basis_.resize(static_cast<size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      sign_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
      x_[n_ + i] = std::abs(residual[i]);
      place_[n_ + i] = Place::Basic;
      basis_[i] = n_ + i;
    }
    refactor();
  }

  void refactor() {
    Matrix b(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) b.col(i) = full_column(basis_[i]);
    Eigen::PartialPivLU<Matrix> lu(b);
    binv_ = lu.inverse();
    // Recompute basic values from the nonbasic ones to shed drift.
    Vector rhs = p_.b;
    for (Eigen::Index j = 0; j < total_; ++j) {
      if (place_[j] != Place::Basic && x_[j] != 0.0) rhs -= x_[j] * full_column(j);
    }
    const Vector xb = binv_ * rhs;
    for (Eigen::Index i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
    since_refactor_ = 0;
  }

  bool eligible(Eigen::Index j, double d) const {
    switch (place_[j]) {
      case Place::Basic: return false;
      case Place::AtLower: return lower_[j] != upper_[j] && d < -opt_.optimality;
      case Place::AtUpper: return lower_[j] != upper_[j] && d > opt_.optimality;
      case Place::Free: return std::abs(d) > opt_.optimality;
    }
    return false;
  }

  Status iterate(const Vector& cost) {
    bool bland = false;
    int degenerate_run = 0;
    for (;;) {
      if (iterations_ >= limit_) return Status::IterationLimit;
      Vector cb(m_);
      for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
      const Vector y = binv_.transpose() * cb;

      Eigen::Index entering = -1;
      double best = 0.0;
      double entering_d = 0.0;
      for (Eigen::Index j = 0; j < total_; ++j) {
        if (place_[j] == Place::Basic) continue;
        const double d = cost[j] - (j < n_ ? y.dot(p_.a.col(j)) : y[j - n_] * sign_[j - n_]);
        if (!eligible(j, d)) continue;
        if (bland) {
          entering = j;
          entering_d = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          entering_d = d;
        }
      }
      if (entering < 0) return Status::Optimal;

      const double dir = entering_d < 0.0 ? 1.0 : -1.0;  // +1 raises x_j
      const Vector alpha = binv_ * full_column(entering);

      // Ratio test. Basic i moves at rate -dir·alpha_i per unit step.
      double theta = upper_[entering] - lower_[entering];  // bound flip
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (std::abs(alpha[i]) <= opt_.pivot) continue;
        const Eigen::Index bi = basis_[i];
        const double rate = -dir * alpha[i];
        double limit;
        bool to_upper;
        if (rate < 0.0) {
          if (!std::isfinite(lower_[bi])) continue;
          limit = (x_[bi] - lower_[bi]) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(upper_[bi])) continue;
          limit = (upper_[bi] - x_[bi]) / rate;
          to_upper = true;
        }
        limit = std::max(limit, 0.0);
        bool take = limit < theta;
        if (!take && limit == theta && leave_row >= 0) {
          take = bland ? bi < basis_[leave_row]
                       : std::abs(alpha[i]) > std::abs(alpha[leave_row]);
        }
        if (take) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) return Status::Unbounded;
      ++iterations_;

      if (theta <= 1e-14) {
        if (++degenerate_run > opt_.degenerate_before_bland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      for (Eigen::Index i = 0; i < m_; ++i) x_[basis_[i]] -= theta * dir * alpha[i];
      x_[entering] += theta * dir;

      if (leave_row < 0) {
        // Entering variable runs to its opposite bound; basis unchanged.
        place_[entering] = dir > 0.0 ? Place::AtUpper : Place::AtLower;
        x_[entering] = dir > 0.0 ? upper_[entering] : lower_[entering];
        continue;
      }

      const Eigen::Index leaving = basis_[leave_row];
      place_[leaving] = leave_to_upper ? Place::AtUpper : Place::AtLower;
      x_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      place_[entering] = Place::Basic;
      basis_[leave_row] = entering;

      // Product-form update of the explicit inverse.
      const double pivot = alpha[leave_row];
      binv_.row(leave_row) /= pivot;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (i != leave_row && alpha[i] != 0.0) binv_.row(i) -= alpha[i] * binv_.row(leave_row);
      }
      if (++since_refactor_ >= opt_.refactor_every) refactor();
    }
  }

  Solution finish(Status status, Solution& out) {
    if (since_refactor_ > 0) refactor();
    out.status = status;
    out.iterations = iterations_;
    out.x = x_.head(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      out.x[j] = std::clamp(out.x[j], lower_[j], upper_[j]);
    }
    if (status == Status::Infeasible) return out;
    const Vector& cost = cost_.size() == total_ ? cost_ : Vector(Vector::Zero(total_));
    Vector cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
    out.duals = binv_.transpose() * cb;
    out.reduced_costs = p_.c - p_.a.transpose() * out.duals;
    out.objective = p_.c.dot(out.x);
    out.basic.assign(static_cast<size_t>(n_), false);
    double dual = p_.b.dot(out.duals);
    for (Eigen::Index j = 0; j < n_; ++j) {
      const double d = out.reduced_costs[j];
      if (place_[j] == Place::Basic) {
        out.basic[j] = true;
        continue;
      }
      if (lower_[j] != upper_[j] && std::abs(d) <= opt_.optimality) out.dual_degenerate = true;
      if (d > 0.0 && std::isfinite(lower_[j])) dual += lower_[j] * d;
      if (d < 0.0 && std::isfinite(upper_[j])) dual += upper_[j] * d;
    }
    out.dual_objective = dual;
    return out;
  }

  const LinearProgram& p_;
  Options opt_;
  Eigen::Index m_, n_, total_;
  Vector lower_, upper_, x_, sign_, cost_;
  std::vector<Place> place_;
  std::vector<Eigen::Index> basis_;
  Matrix binv_;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int limit_ = 0;
};

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  const auto m = program.a.rows();
  const auto n = program.a.cols();
  if (program.b.size() != m || program.c.size() != n || program.lower.size() != n ||
      program.upper.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "linear program shapes are inconsistent");
  }
  if (m < 1 || n < 1) throw Error(ErrorKind::Input, "linear program needs rows and columns");
  if ((program.lower.array() > program.upper.array()).any()) {
    Solution s;
    s.status = Status::Infeasible;
    return s;
  }
  return Solver(program, options).run();
}

}  // namespace liftzonoid::lp
