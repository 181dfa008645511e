#pragma once

#include <vector>

#include "liftzonoid/geometry.hpp"

namespace liftzonoid::lp {

// minimize cᵀx  subject to  Ax = b,  lower <= x <= upper.
// Bounds may be infinite; a variable with both bounds infinite is free.
struct LinearProgram {
  Matrix a;
  Vector b;
  Vector c;
  Vector lower;
  Vector upper;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Options {
  double feasibility = 1e-9;
  double optimality = 1e-9;
  double pivot = 1e-11;
  int max_iterations = 0;          // 0: 50·(rows + columns) + 1000
  int refactor_every = 32;         // explicit basis inverse is rebuilt this often
  int degenerate_before_bland = 50;  // consecutive zero steps before Bland's rule
};

struct Solution {
  Status status = Status::IterationLimit;
  Vector x;
  double objective = 0.0;
  double dual_objective = 0.0;
  Vector duals;           // y with Bᵀy = c_B, one per row
  Vector reduced_costs;   // c - Aᵀy per structural column
  std::vector<bool> basic;  // per structural column
  int iterations = 0;
  bool dual_degenerate = false;  // some nonbasic reduced cost is ~0
};

// Two-phase bounded-variable revised simplex. Phase one starts every
// structural at a finite bound and drives signed artificials to zero; phase
// two keeps remaining artificials fixed at zero. Dantzig pricing, switching
// to Bland's rule after a run of degenerate pivots.
Solution solve(const LinearProgram& program, const Options& options = {});

}  // namespace liftzonoid::lp
