#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smlab/datum.hpp"
#include "smlab/lattice.hpp"
#include "smlab/params.hpp"

namespace smlab {

/// Monte-Carlo lower estimate of || sup_t |u_theta(., t)| ||_{L^2(region)},
/// with the sup taken over lattice times only. This is a lower estimate of
/// the maximal norm, never the norm itself.
struct MaximalEstimate {
  double value = 0.0;      // sqrt(region_volume * mean(sup^2))
  double std_error = 0.0;  // delta-method standard error of value
  double coverage_fraction = 0.0;  // samples lying in Lambda_theta (eps/R-neighbourhood)
  double coherent_fraction = 0.0;  // samples whose sup ratio reaches the interference floor
  double mean_sup_ratio = 0.0;     // mean of sup |u| / sqrt|Omega|
  double omega_measure = 0.0;
  std::size_t samples = 0;
};

/// `count` quasi-random points of B(0, 1): seed-rotated Halton in the cube,
/// rejected outside the ball.
std::vector<Vec> ball_samples(int n, std::size_t count, std::uint64_t seed);

/// Estimate over explicit sample points taken to be uniform on a region of
/// the given volume. Lattice times 1..time_count().
MaximalEstimate maximal_estimate(const Datum& d, std::span<const Vec> points,
                                 double region_volume);

/// Builds f_theta (theta empty or zero gives the unmodulated f) and
/// estimates over `space_samples` points of B(0, 1). Throws ContractError if
/// the time lattice is empty.
MaximalEstimate maximal_lower_bound(const ExperimentParams& params,
                                    std::optional<Vec> theta, std::size_t space_samples,
                                    std::uint64_t seed, bool allow_large_rho_eps = false);

/// Whether x lies within eps/R of (spatial lattice) + t theta for a lattice
/// time t, i.e. x is in Lambda_theta.
bool in_lambda_theta(std::span<const double> x, std::span<const double> theta,
                     const ExperimentParams& params);

}  // namespace smlab
