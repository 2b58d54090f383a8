#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smlab/mollifier.hpp"
#include "smlab/params.hpp"

namespace smlab {

/// Uniform-in-x positivity certificate for int phi_R(x - t theta) eta_R(t) dt.
///
/// The integral is phi0 * eta_mass + (Fourier remainder), and the remainder
/// is bounded for every x at once by gamma_trunc + tail_bound, where
/// gamma_trunc = sum_{0<|k|<=K} |phi_hat_R(k)| |eta_hat_R(theta.k)| and
/// tail_bound covers |k| > K through the decay majorant
/// C_phi R^{-n sigma} (1 + R^{-sigma}|k|)^{-(n+1)} times max |eta_hat_R|,
/// plus the psi_hat interpolation budget on the truncated sum.
/// margin > 0 proves the orbit is eps R^{-sigma}-dense on the whole torus.
struct CertificateReport {
  std::vector<double> theta;
  double R = 0.0;
  double sigma = 0.0;
  double phi0 = 0.0;
  double eta_mass = 0.0;
  double gamma_trunc = 0.0;
  double tail_bound = 0.0;
  double margin = 0.0;
  std::int64_t truncation_radius = 0;
  double phi_decay_constant = 0.0;
  double eta_max = 0.0;
  double interpolation_budget = 0.0;
  /// R^{2 sigma-1} log R < phi0 * eta_mass: the asymptotic sufficient
  /// condition already holds numerically at this R.
  bool asymptotically_certifiable = false;
  std::vector<std::string> warnings;

  bool certified() const { return margin > 0.0; }
};

/// ceil(8 R^sigma).
std::int64_t default_truncation(const ExperimentParams& params);

/// Upper bound for sum_{k in Z^n, |k| > K} (1 + |k|/h)^{-(n+1)}.
/// Every such k owns the unit cube around it, on which |y| - sqrt(n)/2 <= |k|,
/// so the sum is at most the radial integral of the majorant evaluated at
/// max(0, |y| - sqrt(n)/2) over |y| > K - sqrt(n)/2, done in closed form.
double lattice_tail_sum(int n, double K, double h);

/// Throws ContractError if K < R^sigma or the mollifier does not match.
CertificateReport certificate(std::span<const double> theta, const ExperimentParams& params,
                              std::int64_t truncation, const MollifierSpec& mollifier);

nlohmann::json to_json(const CertificateReport& report);

}  // namespace smlab
