#include "liftzonoid/normal.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "liftzonoid/error.hpp"

namespace liftzonoid::normal {
namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

// Acklam's rational approximation for the lower half, |rel err| < 1.15e-9.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double quantile_lower(double p) {
  double x = acklam_lower(p);
  // Two Halley steps on Φ(x) = p; the second only polishes the last ulp.
  for (int i = 0; i < 2; ++i) {
    const double e = cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

// (1 - Φ(c)) / φ(c) for c > 0 via the Laplace continued fraction
// 1/(c + 1/(c + 2/(c + 3/(c + ...)))), evaluated backwards.
double mills_reciprocal_cf(double c) {
  double tail = 0.0;
  for (int k = 80; k >= 1; --k) tail = k / (c + tail);
  return 1.0 / (c + tail);
}

}  // namespace

double pdf(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }

double cdf(double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); }

double sf(double u) { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::Domain, fmt::format("normal quantile needs p in (0,1), got {}", p));
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return quantile_lower(p);
  return -quantile_lower(1.0 - p);
}

double mills_ratio(double c) {
  if (std::isnan(c)) return c;
  if (c > 8.0) return 1.0 / mills_reciprocal_cf(c);
  return pdf(c) / sf(c);
}

double g_ratio(double u) { return mills_ratio(-u); }

double g_ratio_derivative(double u) {
  const double g = g_ratio(u);
  return -u * g - g * g;
}

double g_inverse(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw Error(ErrorKind::Domain, fmt::format("G inverse needs y > 0, got {}", y));
  }
  // Starting point from the two asymptotic regimes.
  double u;
  if (y >= 1.0) {
    u = -y + 1.0 / y;  // G(u) ≈ -u - 1/u as u → -∞
  } else {
    u = std::sqrt(std::max(0.0, -2.0 * std::log(y * kSqrt2Pi)));  // G(u) ≈ φ(u)
  }
  // Bracket [lo, hi] with G(lo) >= y >= G(hi).
  double lo = u - 1.0;
  double hi = u + 1.0;
  while (g_ratio(lo) < y) lo -= 2.0 * (hi - lo);
  while (g_ratio(hi) > y) {
    hi += 2.0 * (hi - lo);
    if (hi > 40.0) {
      hi = 40.0;
      break;
    }
  }
  u = std::clamp(u, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double g = g_ratio(u);
    // Work on log G for uniform conditioning across the range.
    const double f = std::log(g) - std::log(y);
    if (f > 0.0) lo = u; else hi = u;
    const double slope = -u - g;  // d/du log G
    double next = u - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(u)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(u))) {
      return next;
    }
    u = next;
  }
  return u;
}

double isoperimetric(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::Domain,
                fmt::format("isoperimetric function needs alpha in (0,1), got {}", alpha));
  }
  return pdf(quantile(alpha));
}

double radius(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::Domain, fmt::format("radius needs alpha in (0,1), got {}", alpha));
  }
  return isoperimetric(alpha) / alpha;
}

double radius_inverse(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::Domain, fmt::format("radius inverse needs s >= 0, got {}", s));
  }
  if (s == 0.0) return 1.0;
  // r(α) = G(Φ⁻¹(α)), so α = Φ(G⁻¹(s)).
  return cdf(g_inverse(s));
}

}  // namespace liftzonoid::normal
