#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smlab/lattice.hpp"
#include "smlab/params.hpp"

namespace smlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Largest |slope change| when any single point is dropped from the fit.
double leave_one_out_max_change(std::span<const double> x, std::span<const double> y);

struct ScalingRow {
  double R = 0.0;
  double omega_measure = 0.0;
  double lambda_coverage_fraction = 0.0;
  double coherent_fraction = 0.0;
  double lhs_lower = 0.0;
  double lhs_std_error = 0.0;
  double hs_norm_value = 0.0;
  double theta_deficiency = 0.0;
  Vec theta;
  bool ok = true;
  std::string error;
};

struct ScalingReport {
  int n = 0;
  double sigma = 0.0;
  double s_exponent = 0.0;
  std::vector<ScalingRow> rows;  // sorted by R
  double fitted_exponent = 0.0;  // OLS slope of log lhs_lower vs log R
  double intercept = 0.0;
  double predicted = 0.0;        // n sigma / 2
  double residual = 0.0;         // fitted - predicted
  double loo_max_change = 0.0;
};

struct SweepOptions {
  std::size_t search_budget = 64;     // candidate directions per R
  std::size_t density_samples = 2048; // torus samples for the direction search
  bool allow_large_rho_eps = false;
};

/// Per R: search_theta, maximal_lower_bound (params.sample_count points of
/// B(0,1)), hs_norm at params.s_exponent. Rows that throw keep their error
/// text and are left out of the fit. Needs >= 3 values of R spanning at
/// least two octaves.
ScalingReport r_sweep(const ExperimentParams& base, std::span<const double> R_list,
                      const SweepOptions& options = {});

std::string sweep_csv(const ScalingReport& report);
nlohmann::json to_json(const ScalingReport& report);
/// "log_R log_lhs" pairs, one per successful row.
std::string sweep_loglog(const ScalingReport& report);

}  // namespace smlab
