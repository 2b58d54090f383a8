#include "smlab/certificate.hpp"

#include <cmath>

#include "smlab/errors.hpp"
#include "smlab/eta.hpp"
#include "smlab/parallel.hpp"
#include "smlab/quadrature.hpp"

namespace smlab {

std::int64_t default_truncation(const ExperimentParams& params) {
  return static_cast<std::int64_t>(std::ceil(8.0 * params.label_radius()));
}

double lattice_tail_sum(int n, double K, double h) {
  const double a = 0.5 * std::sqrt(static_cast<double>(n));
  const double r0 = std::max(0.0, K - a);
  const double area = unit_sphere_area(n);
  double total = 0.0;
  // Inner shell r in [r0, a): the shifted argument is clamped at 0, so the
  // majorant is 1 there.
  if (r0 < a) total += area * (std::pow(a, n) - std::pow(r0, n)) / n;
  // r >= max(r0, a), s = r - a >= s0: int (1 + s/h)^{-(n+1)} (s + a)^{n-1} ds.
  // With w = 1 + s/h, s + a = h w + (a - h), expand binomially.
  const double s0 = std::max(r0, a) - a;
  const double w0 = 1.0 + s0 / h;
  double radial = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n - 1; ++j) {
    if (j > 0) binom = binom * (n - j) / j;
    radial += binom * std::pow(h, j + 1) * std::pow(a - h, n - 1 - j) * std::pow(w0, j - n) /
              (n - j);
  }
  total += area * radial;
  return total;
}

CertificateReport certificate(std::span<const double> theta, const ExperimentParams& params,
                              std::int64_t truncation, const MollifierSpec& mollifier) {
  check_mollifier(params, mollifier);
  const int n = params.n;
  if (theta.size() != static_cast<std::size_t>(n)) throw ContractError("theta must have n components");
  const double scale = params.label_radius();
  if (static_cast<double>(truncation) < scale) {
    throw ContractError("truncation K = " + std::to_string(truncation) +
                        " is below R^sigma = " + std::to_string(scale));
  }

  CertificateReport rep;
  rep.theta.assign(theta.begin(), theta.end());
  rep.R = params.R;
  rep.sigma = params.sigma;
  rep.truncation_radius = truncation;
  rep.phi0 = std::pow(scale, -n);
  rep.eta_mass = eta_mass(params);
  rep.eta_max = eta_hat_bound(params);
  rep.phi_decay_constant = mollifier.phi_decay_constant();

  // |phi_hat_R| depends on |k|^2 only.
  const std::int64_t K = truncation;
  const std::int64_t K2 = K * K;
  std::vector<double> phi_by_norm(static_cast<std::size_t>(K2) + 1);
  for (std::int64_t q = 0; q <= K2; ++q) {
    phi_by_norm[q] = rep.phi0 * std::abs(mollifier.phi_hat(std::sqrt(static_cast<double>(q)) / scale));
  }

  // One slab per first coordinate; each slab sums its own terms, then the
  // slabs are reduced pairwise in order.
  const std::size_t slabs = static_cast<std::size_t>(2 * K + 1);
  std::vector<double> gamma(slabs), phi_mass(slabs);
  parallel_for(slabs, [&](std::size_t s) {
    std::vector<double> terms, masses;
    IntVec k(n, -K);
    k[0] = static_cast<std::int64_t>(s) - K;
    for (;;) {
      const std::int64_t q = norm_sq(k);
      if (q > 0 && q <= K2) {
        double tau = 0.0;
        for (int c = 0; c < n; ++c) tau += theta[c] * static_cast<double>(k[c]);
        const double ph = phi_by_norm[q];
        terms.push_back(ph * eta_hat_modulus(tau, params, mollifier));
        masses.push_back(ph);
      }
      int d = n - 1;
      while (d >= 1 && k[d] == K) {
        k[d] = -K;
        --d;
      }
      if (d < 1) break;
      ++k[d];
    }
    gamma[s] = pairwise_sum(terms);
    phi_mass[s] = pairwise_sum(masses);
  });
  rep.gamma_trunc = pairwise_sum(gamma);
  const double truncated_phi_mass = pairwise_sum(phi_mass);

  const double tail = rep.phi_decay_constant * rep.phi0 * rep.eta_max *
                      lattice_tail_sum(n, static_cast<double>(K), scale);
  // psi_hat enters gamma_trunc through the table; each |eta_hat| is off by at
  // most R^{2 sigma-1} J times the table error.
  rep.interpolation_budget = mollifier.psi_table_error() * rep.eta_max * truncated_phi_mass;
  rep.tail_bound = tail + rep.interpolation_budget;
  rep.margin = rep.phi0 * rep.eta_mass - (rep.gamma_trunc + rep.tail_bound);
  rep.asymptotically_certifiable =
      params.time_spacing() * std::log(params.R) < rep.phi0 * rep.eta_mass;
  // |theta.k| <= K, so psi_hat is read at most at eps K / (2 R^sigma).
  if (0.5 * params.eps * static_cast<double>(K) / scale > mollifier.psi_resolved_limit()) {
    rep.warnings.push_back("psi_hat evaluated beyond the resolved range of its quadrature");
  }
  if (rep.tail_bound > rep.phi0 * rep.eta_mass) {
    rep.warnings.push_back("tail bound exceeds the main term; raise the truncation K");
  }
  return rep;
}

nlohmann::json to_json(const CertificateReport& r) {
  return {{"theta", r.theta},
          {"R", r.R},
          {"sigma", r.sigma},
          {"phi0", r.phi0},
          {"eta_mass", r.eta_mass},
          {"gamma_trunc", r.gamma_trunc},
          {"tail_bound", r.tail_bound},
          {"margin", r.margin},
          {"certified", r.certified()},
          {"truncation_radius", r.truncation_radius},
          {"phi_decay_constant", r.phi_decay_constant},
          {"eta_max", r.eta_max},
          {"interpolation_budget", r.interpolation_budget},
          {"asymptotically_certifiable", r.asymptotically_certifiable},
          {"warnings", r.warnings}};
}

}  // namespace smlab
