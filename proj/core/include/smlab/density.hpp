#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "smlab/lattice.hpp"
#include "smlab/params.hpp"

namespace smlab {

/// Empirical covering check for the orbit {[t theta] : t in R^sigma Z,
/// 0 < t < R^{1-sigma}} on the torus.
struct DensityWitness {
  Vec theta;
  double worst_deficiency = 0.0;  // max over samples of min over t of |[x] - [t theta]|
  double target = 0.0;            // eps R^{-sigma} unless overridden
  std::size_t samples = 0;
  std::size_t violations = 0;     // samples whose nearest orbit point is >= target away
  Vec worst_point;
  bool passed() const { return worst_deficiency < target; }
};

/// `count` quasi-random torus points: Halton in the first n primes, shifted
/// by a seed-dependent rotation (Cranley-Patterson).
std::vector<Vec> torus_samples(int n, std::size_t count, std::uint64_t seed);

/// Throws ContractError when the time lattice is empty (R too small for
/// sigma) or theta is not a unit vector in R^n.
DensityWitness density_deficiency(std::span<const double> theta, const ExperimentParams& params,
                                  std::size_t sample_count, std::uint64_t seed,
                                  std::optional<double> target = std::nullopt);

/// Candidate directions: algebraic ones first (normalised (1, a, a^2, ...)
/// with a = 2^{1/(n+1)}, square roots of primes, cube roots of primes), then
/// quasi-random points of the sphere.
std::vector<Vec> theta_candidates(int n, std::size_t count, std::uint64_t seed);

/// Coarse screen of every candidate, then the best few re-scored on the
/// full sample (params.sample_count points, `seed`). With one candidate the
/// result is exactly density_deficiency on that candidate.
DensityWitness search_theta_among(std::span<const Vec> candidates, const ExperimentParams& params,
                                  std::uint64_t seed, std::optional<double> target = std::nullopt);

DensityWitness search_theta(const ExperimentParams& params, std::size_t candidate_count,
                            std::uint64_t seed, std::optional<double> target = std::nullopt);

nlohmann::json to_json(const DensityWitness& w);

}  // namespace smlab
