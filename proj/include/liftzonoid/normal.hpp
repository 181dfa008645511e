#pragma once

// Scalar standard-normal toolkit: density, distribution, quantile, the Gauss
// isoperimetric function I = φ∘Φ⁻¹, the trimmed-ball radius r(α) = I(α)/α and
// the ratio G(u) = φ(u)/Φ(u) together with its inverse.

namespace liftzonoid::normal {

double pdf(double u);
// Φ(u). Accurate in relative terms deep into the lower tail.
double cdf(double u);
// 1 - Φ(u), evaluated without cancellation.
double sf(double u);
// Φ⁻¹(p) for p in (0,1); throws DomainError otherwise.
double quantile(double p);

// φ(c) / (1 - Φ(c)): the mean of a standard normal conditioned on z >= c.
// Uses a continued fraction for c > 8 where both factors underflow together.
double mills_ratio(double c);

// G(u) = φ(u)/Φ(u); strictly decreasing from +∞ to 0.
double g_ratio(double u);
// G'(u) = -u G(u) - G(u)².
double g_ratio_derivative(double u);
// The u with G(u) = y; requires y > 0.
double g_inverse(double y);

// I(α) = φ(Φ⁻¹(α)) for α in (0,1).
double isoperimetric(double alpha);
// r(α) = I(α)/α for α in (0,1).
double radius(double alpha);
// r⁻¹(s) for s >= 0, with r⁻¹(0) = 1.
double radius_inverse(double s);

}  // namespace liftzonoid::normal
