#include "liftzonoid/depth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>

#include "liftzonoid/directions.hpp"
#include "liftzonoid/error.hpp"
#include "liftzonoid/simplex.hpp"
#include "liftzonoid/zonoid.hpp"

namespace liftzonoid {

std::string_view to_string(DepthStatus status) {
  switch (status) {
    case DepthStatus::Interior: return "Interior";
    case DepthStatus::Boundary: return "Boundary";
    case DepthStatus::Outside: return "Outside";
    case DepthStatus::Mean: return "Mean";
  }
  return "Unknown";
}

void require_full_affine_rank(const EmpiricalMeasure& mu, const Tolerances& tol) {
  if (mu.size() < mu.dim() + 1) {
    throw Error(ErrorKind::DegenerateMeasure,
                fmt::format("{} atoms cannot affinely span dimension {}", mu.size(), mu.dim()));
  }
  Matrix centered = mu.points();
  centered.colwise() -= mu.mean();
  Eigen::ColPivHouseholderQR<Matrix> qr(centered);
  qr.setThreshold(tol.rank);
  if (qr.rank() < mu.dim()) {
    throw Error(ErrorKind::DegenerateMeasure,
                fmt::format("atoms span an affine subspace of dimension {} < {}", qr.rank(),
                            mu.dim()));
  }
}

namespace {

lp::Options solver_options(const Tolerances& tol) {
  lp::Options o;
  o.feasibility = tol.lp_feasibility;
  o.optimality = tol.lp_optimality;
  o.pivot = tol.lp_pivot;
  return o;
}

// Largest ε with x = Σλ_i x_i, Σλ_i = 1, λ_i >= ε. Positive iff x is interior.
double interior_margin(const EmpiricalMeasure& mu, const Vector& x, const Tolerances& tol) {
  const auto d = mu.dim();
  const auto n = mu.size();
  Matrix centered = mu.points();
  centered.colwise() -= x;
  lp::LinearProgram p;
  p.a.resize(d + 1, n + 1);
  p.a.topLeftCorner(d, 1) = centered.rowwise().sum();
  p.a.topRightCorner(d, n) = centered;
  p.a(d, 0) = static_cast<double>(n);
  p.a.bottomRightCorner(1, n).setOnes();
  p.b = Vector::Zero(d + 1);
  p.b[d] = 1.0;
  p.c = Vector::Zero(n + 1);
  p.c[0] = -1.0;
  p.lower = Vector::Zero(n + 1);
  p.upper = Vector::Constant(n + 1, std::numeric_limits<double>::infinity());
  p.upper[0] = 1.0 / static_cast<double>(n);
  const auto sol = lp::solve(p, solver_options(tol));
  if (sol.status != lp::Status::Optimal) return 0.0;
  return sol.x[0];
}

// Among all optimal duals of the depth LP, the one of least Euclidean norm.
// The optimal set is cut out by complementary slackness with the primal β:
//   0 < β_i < w_i:  <x_i - x, y> = -1
//   β_i = w_i:      <x_i - x, y> >= -1
//   β_i = 0:        <x_i - x, y> <= -1
// A primal active-set QP started from the simplex dual y0 finds it. The
// choice is canonical: any isometry fixing μ and x maps it to itself, so
// symmetric configurations get the symmetric normal rather than an
// arbitrary extreme ray of the normal cone.
Vector least_norm_dual(const Matrix& centered, const Vector& beta, const Vector& weights,
                       const Vector& y0, double tol) {
  const auto n = centered.cols();
  const auto d = centered.rows();
  std::vector<Eigen::Index> equalities;
  std::vector<Eigen::Index> inequalities;
  Matrix g(d, n);  // inequality rows stored as columns: g_iᵀy <= h_i
  Vector h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double slack = tol * std::max(weights[i], 1e-300);
    const bool at_lower = beta[i] <= slack;
    const bool at_upper = beta[i] >= weights[i] - slack;
    if (at_lower == at_upper) {
      equalities.push_back(i);
      g.col(i) = centered.col(i);
      h[i] = -1.0;
    } else if (at_upper) {
      g.col(i) = -centered.col(i);
      h[i] = 1.0;
      inequalities.push_back(i);
    } else {
      g.col(i) = centered.col(i);
      h[i] = -1.0;
      inequalities.push_back(i);
    }
  }

  Vector y = y0;
  std::vector<Eigen::Index> working = equalities;
  const int limit = 20 * static_cast<int>(n + d) + 100;
  for (int iter = 0; iter < limit; ++iter) {
    Matrix aw(d, static_cast<Eigen::Index>(working.size()));
    for (size_t k = 0; k < working.size(); ++k) aw.col(static_cast<Eigen::Index>(k)) = g.col(working[k]);
    // Project y onto the span of the working normals: y = A_W λ + (rest).
    Vector lambda = Vector::Zero(aw.cols());
    if (aw.cols() > 0) lambda = aw.completeOrthogonalDecomposition().solve(y);
    const Vector step = (aw.cols() > 0 ? Vector(aw * lambda) : Vector::Zero(d)) - y;
    const double scale = std::max(1.0, y.norm());
    if (step.norm() <= 1e-13 * scale) {
      // Stationary on the working face; KKT needs μ = -λ >= 0 on inequalities.
      Eigen::Index worst = -1;
      double most = 1e-12 * scale;
      for (size_t k = equalities.size(); k < working.size(); ++k) {
        if (lambda[static_cast<Eigen::Index>(k)] > most) {
          most = lambda[static_cast<Eigen::Index>(k)];
          worst = static_cast<Eigen::Index>(k);
        }
      }
      if (worst < 0) return y;
      working.erase(working.begin() + worst);
      continue;
    }
    double length = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i : inequalities) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double rate = g.col(i).dot(step);
      if (rate <= 1e-15 * step.norm() * g.col(i).norm()) continue;
      const double room = std::max(0.0, h[i] - g.col(i).dot(y)) / rate;
      if (room < length) {
        length = room;
        blocking = i;
      }
    }
    y += length * step;
    if (blocking >= 0) working.push_back(blocking);
  }
  return y0;
}

}  // namespace

DepthCertificate zonoid_depth(const EmpiricalMeasure& mu, const Vector& x, const Tolerances& tol) {
  require_dim(mu.dim(), x.size(), "query point");
  require_finite(x, "query point");
  require_full_affine_rank(mu, tol);

  DepthCertificate cert;
  const double scale = std::max(1.0, mu.points().cwiseAbs().maxCoeff());
  if ((x - mu.mean()).norm() <= tol.mean_point * scale) {
    cert.depth = 1.0;
    cert.status = DepthStatus::Mean;
    cert.atom_weights = mu.weights();
    cert.max_weight_ratio = 1.0;
    cert.primal_objective = cert.dual_objective = -1.0;
    return cert;
  }

  lp::LinearProgram p;
  p.a = mu.points();
  p.a.colwise() -= x;
  p.b = Vector::Zero(mu.dim());
  p.c = Vector::Constant(mu.size(), -1.0);
  p.lower = Vector::Zero(mu.size());
  p.upper = mu.weights();
  const auto sol = lp::solve(p, solver_options(tol));
  cert.iterations = sol.iterations;
  if (sol.status != lp::Status::Optimal) {
    throw Error(ErrorKind::NotConverged, "depth LP did not reach optimality");
  }
  cert.primal_objective = sol.objective;
  cert.dual_objective = sol.dual_objective;
  const double mass = sol.x.sum();
  if (mass <= tol.outside_depth) {
    cert.depth = 0.0;
    cert.status = DepthStatus::Outside;
    cert.atom_weights = Vector();
    return cert;
  }
  cert.depth = std::min(mass, 1.0);
  cert.atom_weights = sol.x / mass;
  cert.max_weight_ratio = (cert.atom_weights.array() / mu.weights().array()).maxCoeff();
  cert.dual_degenerate = sol.dual_degenerate;
  const Vector dual = least_norm_dual(p.a, sol.x, mu.weights(), sol.duals, 1e-9);
  if (dual.norm() > 0.0) cert.dual_direction = Direction(dual);
  cert.status = interior_margin(mu, x, tol) > 1e-10 ? DepthStatus::Interior : DepthStatus::Boundary;
  return cert;
}

Direction depth_dual_direction(const DepthCertificate& cert) {
  if (cert.status == DepthStatus::Mean) {
    throw Error(ErrorKind::NoDual, "every direction supports the mean");
  }
  if (cert.status == DepthStatus::Outside || !cert.dual_direction) {
    throw Error(ErrorKind::NoDual, "no supporting direction outside the convex hull");
  }
  return *cert.dual_direction;
}

namespace {

// Is x ∈ D_α(μ)? Decided by vertex enumeration of the feasibility polytope.
class MembershipOracle {
 public:
  MembershipOracle(const EmpiricalMeasure& mu, const Vector& x, int grid)
      : mu_(mu), x_(x), grid_(direction_grid(mu.dim(), grid, 0)) {
    const auto d = mu.dim();
    const auto n = mu.size();
    a_.resize(d + 1, n);
    a_.topRows(d) = mu.points();
    a_.row(d).setOnes();
    b_.resize(d + 1);
    b_.head(d) = x;
    b_[d] = 1.0;
    // Every (d+1)-subset of columns.
    std::vector<Eigen::Index> pick(static_cast<size_t>(d + 1));
    enumerate(pick, 0, 0);
  }

  bool contains(double alpha) const {
    for (const auto& u : grid_) {
      if (x_.dot(u.vec()) > support_trimmed(mu_, {alpha, u}) + 1e-12) return false;
    }
    const Vector cap = mu_.weights() / alpha;
    for (const auto& basis : bases_) {
      const auto& nonbasic = basis.nonbasic;
      const auto k = static_cast<Eigen::Index>(nonbasic.size());
      // Gray-code walk over lower/upper placements of the nonbasic columns.
      Vector gamma = basis.base;
      std::vector<bool> at_upper(static_cast<size_t>(k), false);
      const std::uint64_t count = std::uint64_t{1} << k;
      for (std::uint64_t step = 0;; ++step) {
        if (feasible(gamma, basis.cols, cap)) return true;
        if (step + 1 == count) break;
        const auto flip = static_cast<Eigen::Index>(std::countr_zero(step + 1));
        const double delta = at_upper[flip] ? -cap[nonbasic[flip]] : cap[nonbasic[flip]];
        at_upper[flip] = !at_upper[flip];
        gamma -= delta * basis.moves.col(flip);
      }
    }
    return false;
  }

 private:
  struct Basis {
    std::vector<Eigen::Index> cols;
    std::vector<Eigen::Index> nonbasic;
    Vector base;   // B⁻¹b
    Matrix moves;  // B⁻¹N
  };

  static bool feasible(const Vector& gamma, const std::vector<Eigen::Index>& cols,
                       const Vector& cap) {
    constexpr double slack = 1e-10;
    for (size_t i = 0; i < cols.size(); ++i) {
      const auto g = gamma[static_cast<Eigen::Index>(i)];
      if (g < -slack || g > cap[cols[i]] + slack) return false;
    }
    return true;
  }

  void enumerate(std::vector<Eigen::Index>& pick, size_t depth, Eigen::Index from) {
    const auto n = a_.cols();
    if (depth == pick.size()) {
      Matrix b(a_.rows(), a_.rows());
      for (size_t i = 0; i < pick.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = a_.col(pick[i]);
      Eigen::FullPivLU<Matrix> lu(b);
      if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12) return;
      Basis basis;
      basis.cols = pick;
      for (Eigen::Index j = 0, p = 0; j < n; ++j) {
        if (p < static_cast<Eigen::Index>(pick.size()) && pick[p] == j) { ++p; continue; }
        basis.nonbasic.push_back(j);
      }
      basis.base = lu.solve(b_);
      basis.moves.resize(a_.rows(), static_cast<Eigen::Index>(basis.nonbasic.size()));
      for (size_t k = 0; k < basis.nonbasic.size(); ++k) {
        basis.moves.col(static_cast<Eigen::Index>(k)) = lu.solve(Vector(a_.col(basis.nonbasic[k])));
      }
      bases_.push_back(std::move(basis));
      return;
    }
    for (Eigen::Index j = from; j < n; ++j) {
      pick[depth] = j;
      enumerate(pick, depth + 1, j + 1);
    }
  }

  const EmpiricalMeasure& mu_;
  Vector x_;
  std::vector<Direction> grid_;
  Matrix a_;
  Vector b_;
  std::vector<Basis> bases_;
};

}  // namespace

double depth_bruteforce_oracle(const EmpiricalMeasure& mu, const Vector& x, int grid) {
  require_dim(mu.dim(), x.size(), "query point");
  if (mu.size() > 12 || mu.dim() > 3) {
    throw Error(ErrorKind::TooLarge,
                fmt::format("oracle handles n <= 12, d <= 3 (got n = {}, d = {})", mu.size(),
                            mu.dim()));
  }
  const double scale = std::max(1.0, mu.points().cwiseAbs().maxCoeff());
  if ((x - mu.mean()).norm() <= 1e-10 * scale) return 1.0;
  MembershipOracle oracle(mu, x, grid);
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 45; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (oracle.contains(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace liftzonoid
