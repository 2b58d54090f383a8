#include "smlab/eta.hpp"

#include <cmath>
#include <numbers>

#include "smlab/errors.hpp"
#include "smlab/quadrature.hpp"

namespace smlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelNodes = 8;

}  // namespace

void check_mollifier(const ExperimentParams& params, const MollifierSpec& mollifier) {
  if (mollifier.dim() != params.n || mollifier.eps() != params.eps) {
    throw ContractError("mollifier (n, eps) does not match the parameters");
  }
  if (!(0.5 * params.eps < 0.5 * params.label_radius())) {
    throw ContractError("phi_R support eps/(2 R^sigma) must stay below 1/2");
  }
}

double eta_mass(const ExperimentParams& params) {
  return params.time_spacing() * static_cast<double>(params.time_count());
}

double eta_hat_bound(const ExperimentParams& params) { return eta_mass(params); }

std::complex<double> eta_hat(double tau, const ExperimentParams& params,
                             const MollifierSpec& mollifier) {
  const double scale = params.label_radius();
  const std::int64_t J = params.time_count();
  const double prefactor = params.time_spacing() * mollifier.psi_hat(tau / scale);
  const double a = scale * tau;
  const double r = a - std::nearbyint(a);
  if (r == 0.0) return prefactor * static_cast<double>(J);
  const double Jd = static_cast<double>(J);
  const double ratio = std::sin(kPi * Jd * r) / std::sin(kPi * r);
  return prefactor * ratio * std::polar(1.0, -kPi * r * (Jd + 1.0));
}

double eta_hat_modulus(double tau, const ExperimentParams& params,
                       const MollifierSpec& mollifier) {
  const double scale = params.label_radius();
  const std::int64_t J = params.time_count();
  const double prefactor = params.time_spacing() * std::abs(mollifier.psi_hat(tau / scale));
  const double a = scale * tau;
  const double r = a - std::nearbyint(a);
  if (r == 0.0) return prefactor * static_cast<double>(J);
  return prefactor * std::abs(std::sin(kPi * static_cast<double>(J) * r) / std::sin(kPi * r));
}

double sphere_average_eta(const IntVec& k, const ExperimentParams& params,
                          const MollifierSpec& mollifier) {
  const double k_norm = std::sqrt(static_cast<double>(norm_sq(k)));
  if (k_norm == 0.0) throw ContractError("sphere_average_eta needs k != 0");
  check_mollifier(params, mollifier);
  const int n = params.n;
  const double J = static_cast<double>(params.time_count());
  if (J == 0.0) return 0.0;

  // Dirichlet zeros in t: R^sigma |k| t = m / J.
  const double zero_step = 1.0 / (J * params.label_radius() * k_norm);
  const GaussRule unit = gauss_legendre(kPanelNodes);
  auto panel = [&](double t0, double t1) {
    const double p0 = std::asin(t0);
    const double p1 = std::asin(t1);
    const double mid = 0.5 * (p0 + p1);
    const double half = 0.5 * (p1 - p0);
    double s = 0.0;
    for (int i = 0; i < kPanelNodes; ++i) {
      const double phi = mid + half * unit.nodes[i];
      const double c = std::cos(phi);
      s += unit.weights[i] * eta_hat_modulus(k_norm * std::sin(phi), params, mollifier) *
           std::pow(c, n - 2);
    }
    return s * half;
  };

  double half_line = 0.0;
  double lo = 0.0;
  for (std::int64_t m = 1;; ++m) {
    const double hi = std::min(1.0, static_cast<double>(m) * zero_step);
    half_line += panel(lo, hi);
    if (hi >= 1.0) break;
    lo = hi;
  }
  // |eta_hat| is even in tau.
  return unit_sphere_area(n - 1) * 2.0 * half_line;
}

std::complex<double> phi_hat(const IntVec& k, const ExperimentParams& params,
                             const MollifierSpec& mollifier) {
  check_mollifier(params, mollifier);
  const double scale = params.label_radius();
  const double k_norm = std::sqrt(static_cast<double>(norm_sq(k)));
  return std::pow(scale, -params.n) * mollifier.phi_hat(k_norm / scale);
}

}  // namespace smlab
