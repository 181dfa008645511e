#pragma once

namespace liftzonoid {

// Every numeric tolerance used by the library and its property checks.
struct Tolerances {
  double unit_norm = 1e-12;        // |‖u‖ - 1| for a Direction
  double weight_sum = 1e-12;       // |Σw - 1| for an EmpiricalMeasure
  double mass_round_trip = 1e-10;  // mass(upper_quantile(α)) vs α
  double renormalize_warn = 1e-9;  // CSV weights off by more than this are reported
  double tie = 1e-12;              // relative gap under which projections count as tied
  double lp_feasibility = 1e-9;    // primal bound / row residual slack in the simplex
  double lp_optimality = 1e-9;     // reduced-cost slack; also the dual-degeneracy flag
  double lp_pivot = 1e-11;         // smallest admissible pivot magnitude
  double outside_depth = 1e-9;     // LP optimum at or below this means "outside"
  double mean_point = 1e-10;       // ‖x - mean‖ under this is the mean
  double rank = 1e-10;             // relative pivot threshold of the rank check
  double min_alpha = 1e-6;         // representation refuses depth below this
  double representation = 1e-8;    // residual accepted by represent
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace liftzonoid
