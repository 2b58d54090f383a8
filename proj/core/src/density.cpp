#include "smlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "smlab/errors.hpp"
#include "smlab/parallel.hpp"
#include "smlab/quadrature.hpp"
#include "smlab/torus.hpp"

namespace smlab {

namespace {

constexpr std::size_t kRefineCount = 4;
constexpr std::size_t kCoarseMin = 256;
constexpr std::size_t kCoarseMax = 1024;

Vec normalized(Vec v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  s = std::sqrt(s);
  for (auto& c : v) c /= s;
  return v;
}

void check_theta(std::span<const double> theta, int n) {
  if (theta.size() != static_cast<std::size_t>(n)) {
    throw ContractError("theta must have n components");
  }
  double s = 0.0;
  for (double c : theta) s += c * c;
  if (std::abs(s - 1.0) > 1e-9) throw ContractError("theta must be a unit vector");
}

}  // namespace

std::vector<Vec> torus_samples(int n, std::size_t count, std::uint64_t seed) {
  const auto primes = first_primes(static_cast<std::size_t>(n));
  SplitMix rng(task_seed(seed, 0x7045));
  Vec shift(n);
  for (auto& s : shift) s = rng.uniform();
  std::vector<Vec> out(count, Vec(n));
  for (std::size_t i = 0; i < count; ++i) {
    for (int c = 0; c < n; ++c) out[i][c] = wrap_unit(radical_inverse(i + 1, primes[c]) + shift[c]);
  }
  return out;
}

DensityWitness density_deficiency(std::span<const double> theta, const ExperimentParams& params,
                                  std::size_t sample_count, std::uint64_t seed,
                                  std::optional<double> target) {
  const int n = params.n;
  check_theta(theta, n);
  const std::int64_t J = params.time_count();
  if (J == 0) {
    throw ContractError("time lattice R^sigma Z cap (0, R^{1-sigma}) is empty: R too small for sigma");
  }
  if (sample_count < 1) throw ContractError("density_deficiency needs at least one sample");

  // Orbit points [R^sigma j theta], j = 1..J.
  const double step = params.label_radius();
  std::vector<double> orbit(static_cast<std::size_t>(J) * n);
  for (std::int64_t j = 1; j <= J; ++j) {
    for (int c = 0; c < n; ++c) {
      orbit[(j - 1) * n + c] = wrap_unit(step * static_cast<double>(j) * theta[c]);
    }
  }

  const auto samples = torus_samples(n, sample_count, seed);
  std::vector<double> nearest(sample_count);
  parallel_for(sample_count, [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    const double* x = samples[i].data();
    for (std::int64_t j = 0; j < J; ++j) {
      best = std::min(best, torus_distance_sq(x, orbit.data() + j * n, n));
    }
    nearest[i] = std::sqrt(best);
  });

  DensityWitness w;
  w.theta.assign(theta.begin(), theta.end());
  w.target = target.value_or(params.eps / params.label_radius());
  w.samples = sample_count;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    if (nearest[i] > nearest[worst]) worst = i;
    if (nearest[i] >= w.target) ++w.violations;
  }
  w.worst_deficiency = nearest[worst];
  w.worst_point = samples[worst];
  return w;
}

std::vector<Vec> theta_candidates(int n, std::size_t count, std::uint64_t seed) {
  std::vector<Vec> out;
  const auto primes = first_primes(static_cast<std::size_t>(2 * n + 2));

  Vec powers(n), roots(n), cubes(n);
  const double base = std::pow(2.0, 1.0 / (n + 1));
  for (int c = 0; c < n; ++c) {
    powers[c] = std::pow(base, c);
    roots[c] = std::sqrt(static_cast<double>(primes[c]));
    cubes[c] = std::cbrt(static_cast<double>(primes[c]));
  }
  for (auto* v : {&powers, &roots, &cubes}) {
    if (out.size() < count) out.push_back(normalized(*v));
  }

  // Halton points pushed through Box-Muller give directions that are
  // quasi-uniform on the sphere.
  const int dims = 2 * ((n + 1) / 2);
  SplitMix rng(task_seed(seed, 0x5eed));
  Vec shift(dims);
  for (auto& s : shift) s = rng.uniform();
  for (std::uint64_t i = 1; out.size() < count; ++i) {
    Vec g(dims);
    for (int c = 0; c < dims; c += 2) {
      const double u1 = wrap_unit(radical_inverse(i, primes[c + 2]) + shift[c]);
      const double u2 = wrap_unit(radical_inverse(i, primes[c + 3]) + shift[c + 1]);
      if (u1 <= 0.0) continue;
      const double r = std::sqrt(-2.0 * std::log(u1));
      g[c] = r * std::cos(2.0 * std::numbers::pi * u2);
      g[c + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    g.resize(n);
    double s = 0.0;
    for (double c : g) s += c * c;
    if (s < 1e-12) continue;
    out.push_back(normalized(std::move(g)));
  }
  return out;
}

DensityWitness search_theta_among(std::span<const Vec> candidates, const ExperimentParams& params,
                                  std::uint64_t seed, std::optional<double> target) {
  if (candidates.empty()) throw ContractError("search_theta needs at least one candidate");
  const auto fine = static_cast<std::size_t>(params.sample_count);
  const std::size_t coarse = std::clamp(fine / 16, kCoarseMin, kCoarseMax);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (candidates.size() > kRefineCount) {
    std::vector<double> score(candidates.size());
    const std::uint64_t coarse_seed = task_seed(seed, 0xc0a5);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      score[i] = density_deficiency(candidates[i], params, coarse, coarse_seed, target)
                     .worst_deficiency;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
    order.resize(kRefineCount);
  }

  DensityWitness best;
  bool have = false;
  for (std::size_t idx : order) {
    auto w = density_deficiency(candidates[idx], params, fine, seed, target);
    if (!have || w.worst_deficiency < best.worst_deficiency) {
      best = std::move(w);
      have = true;
    }
  }
  return best;
}

DensityWitness search_theta(const ExperimentParams& params, std::size_t candidate_count,
                            std::uint64_t seed, std::optional<double> target) {
  if (candidate_count < 1) throw ContractError("search_theta needs candidate_count >= 1");
  const auto candidates = theta_candidates(params.n, candidate_count, seed);
  return search_theta_among(candidates, params, seed, target);
}

nlohmann::json to_json(const DensityWitness& w) {
  return {{"theta", w.theta},
          {"worst_deficiency", w.worst_deficiency},
          {"target", w.target},
          {"samples", w.samples},
          {"violations", w.violations},
          {"worst_point", w.worst_point},
          {"passed", w.passed()}};
}

}  // namespace smlab
