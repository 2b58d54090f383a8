#include "smlab/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "smlab/errors.hpp"
#include "smlab/parallel.hpp"
#include "smlab/propagator.hpp"
#include "smlab/quadrature.hpp"
#include "smlab/torus.hpp"

namespace smlab {

std::vector<Vec> ball_samples(int n, std::size_t count, std::uint64_t seed) {
  const auto primes = first_primes(static_cast<std::size_t>(n));
  SplitMix rng(task_seed(seed, 0xba11));
  Vec shift(n);
  for (auto& s : shift) s = rng.uniform();
  std::vector<Vec> out;
  out.reserve(count);
  for (std::uint64_t i = 1; out.size() < count; ++i) {
    Vec x(n);
    double r2 = 0.0;
    for (int c = 0; c < n; ++c) {
      x[c] = 2.0 * wrap_unit(radical_inverse(i, primes[c]) + shift[c]) - 1.0;
      r2 += x[c] * x[c];
    }
    if (r2 < 1.0) out.push_back(std::move(x));
  }
  return out;
}

bool in_lambda_theta(std::span<const double> x, std::span<const double> theta,
                     const ExperimentParams& params) {
  const int n = params.n;
  const double h = params.space_spacing();
  const double label_bound = 2.0 * params.center_spacing();
  const double label_bound_sq = snap_integer(label_bound * label_bound);
  const double radius = params.eps / params.R;
  const double dt = params.time_spacing();
  const std::int64_t J = params.time_count();
  IntVec m(n);
  for (std::int64_t k = 1; k <= J; ++k) {
    const double t = static_cast<double>(k) * dt;
    double gap2 = 0.0;
    for (int c = 0; c < n; ++c) {
      const double y = x[c] - t * theta[c];
      m[c] = static_cast<std::int64_t>(std::nearbyint(y / h));
      const double g = y - h * static_cast<double>(m[c]);
      gap2 += g * g;
    }
    if (gap2 < radius * radius && static_cast<double>(norm_sq(m)) < label_bound_sq) return true;
  }
  return false;
}

MaximalEstimate maximal_estimate(const Datum& d, std::span<const Vec> points,
                                 double region_volume) {
  const std::int64_t J = d.params().time_count();
  if (J == 0) throw ContractError("time lattice is empty: R too small for sigma");
  if (points.empty()) throw ContractError("maximal estimate needs at least one sample");
  const double root_measure = std::sqrt(d.omega_measure());
  const Vec zero(d.dim(), 0.0);
  const Vec& theta = d.theta() ? *d.theta() : zero;
  const double floor = interference_floor();

  std::vector<double> sup_sq(points.size()), ratio(points.size()), covered(points.size()),
      coherent(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto values = evaluate_time_lattice(d, points[i], J);
    double best = 0.0;
    for (const auto& v : values) best = std::max(best, std::abs(v));
    sup_sq[i] = best * best;
    ratio[i] = best / root_measure;
    coherent[i] = ratio[i] >= floor ? 1.0 : 0.0;
    covered[i] = in_lambda_theta(points[i], theta, d.params()) ? 1.0 : 0.0;
  });

  const double count = static_cast<double>(points.size());
  const double mean = pairwise_sum(sup_sq) / count;
  std::vector<double> dev(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) dev[i] = (sup_sq[i] - mean) * (sup_sq[i] - mean);
  const double var = points.size() > 1 ? pairwise_sum(dev) / (count - 1.0) : 0.0;

  MaximalEstimate est;
  est.samples = points.size();
  est.omega_measure = d.omega_measure();
  est.value = std::sqrt(region_volume * mean);
  const double se_mean = std::sqrt(var / count);
  est.std_error = est.value > 0.0 ? region_volume * se_mean / (2.0 * est.value) : 0.0;
  est.coverage_fraction = pairwise_sum(covered) / count;
  est.coherent_fraction = pairwise_sum(coherent) / count;
  est.mean_sup_ratio = pairwise_sum(ratio) / count;
  return est;
}

MaximalEstimate maximal_lower_bound(const ExperimentParams& params, std::optional<Vec> theta,
                                    std::size_t space_samples, std::uint64_t seed,
                                    bool allow_large_rho_eps) {
  if (theta && std::all_of(theta->begin(), theta->end(), [](double c) { return c == 0.0; })) {
    theta.reset();
  }
  const Datum d = build_datum(params, theta, allow_large_rho_eps);
  const auto points = ball_samples(params.n, space_samples, seed);
  return maximal_estimate(d, points, unit_ball_volume(params.n));
}

}  // namespace smlab
