#include "liftzonoid/gaussian.hpp"

#include <cmath>
#include <vector>

#include "liftzonoid/error.hpp"
#include "liftzonoid/normal.hpp"
#include "liftzonoid/parallel.hpp"
#include "liftzonoid/rng.hpp"

namespace liftzonoid {

std::string_view to_string(RepresentationMethod method) {
  switch (method) {
    case RepresentationMethod::LpDual: return "lp-dual";
    case RepresentationMethod::ClosedForm: return "closed-form";
    case RepresentationMethod::Refined: return "refined";
  }
  return "unknown";
}

double gaussian_depth(const GaussianMeasure& mu, const Vector& x) {
  require_finite(x, "query point");
  return normal::radius_inverse(mu.whiten(x).norm());
}

RepresentationResult gaussian_represent(const GaussianMeasure& mu, const Vector& x) {
  require_finite(x, "query point");
  const Vector z = mu.whiten(x);
  const double s = z.norm();
  RepresentationResult out{HalfSpace::whole_space(Direction(Vector::Unit(mu.dim(), 0)))};
  out.method = RepresentationMethod::ClosedForm;
  if (s == 0.0) return out;

  const double whitened_offset = -normal::g_inverse(s);
  // <z', z/s> >= a'  with z' = L⁻¹(y - m)  ⇔  <L⁻ᵀz/s, y> >= a' + <L⁻ᵀz/s, m>.
  const Vector v = mu.factor().transpose().triangularView<Eigen::Upper>().solve(z / s);
  const double vn = v.norm();
  out.halfspace = HalfSpace{Direction(v), (whitened_offset + v.dot(mu.mean())) / vn};
  out.alpha = normal::sf(whitened_offset);
  out.residual = (halfspace_barycenter(mu, out.halfspace) - x).norm();
  return out;
}

namespace {

struct ChunkMoments {
  std::size_t count = 0;
  Vector mean;
  Vector m2;
};

}  // namespace

MonteCarloBarycenter monte_carlo_barycenter(const GaussianMeasure& mu, const HalfSpace& h,
                                            std::size_t samples, std::uint64_t seed,
                                            int workers) {
  require_dim(mu.dim(), h.direction.dim(), "half-space");
  if (samples < 2) throw Error(ErrorKind::Domain, "Monte-Carlo needs at least 2 samples");
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  const auto d = mu.dim();
  std::vector<ChunkMoments> parts(chunks);

  for_each_task(chunks, workers, [&](std::size_t c) {
    auto rng = make_stream(seed, c);
    std::normal_distribution<double> normal;
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    ChunkMoments acc{0, Vector::Zero(d), Vector::Zero(d)};
    Vector z(d);
    for (std::size_t k = begin; k < end; ++k) {
      for (Eigen::Index i = 0; i < d; ++i) z[i] = normal(rng);
      const Vector y = mu.unwhiten(z);
      if (!h.contains(y)) continue;
      ++acc.count;
      const Vector delta = y - acc.mean;
      acc.mean += delta / static_cast<double>(acc.count);
      acc.m2 += delta.cwiseProduct(y - acc.mean);
    }
    parts[c] = std::move(acc);
  });

  ChunkMoments total{0, Vector::Zero(d), Vector::Zero(d)};
  for (const auto& p : parts) {
    if (p.count == 0) continue;
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(p.count);
    const double n = na + nb;
    const Vector delta = p.mean - total.mean;
    total.mean += delta * (nb / n);
    total.m2 += p.m2 + delta.cwiseProduct(delta) * (na * nb / n);
    total.count += p.count;
  }
  if (total.count < 2) throw Error(ErrorKind::ZeroMass, "too few samples fell in the half-space");

  MonteCarloBarycenter out;
  out.estimate = total.mean;
  out.samples = samples;
  out.included = total.count;
  // Influence ψ = 1_H (X - B)/p̂ has Σψ² = m2 / p̂²; sd over all N samples.
  const double p_hat = static_cast<double>(total.count) / static_cast<double>(samples);
  out.sigma = (total.m2 / static_cast<double>(samples)).cwiseSqrt() / p_hat;
  return out;
}

}  // namespace liftzonoid
