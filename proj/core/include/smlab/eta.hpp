#pragma once

#include <complex>

#include "smlab/lattice.hpp"
#include "smlab/mollifier.hpp"
#include "smlab/params.hpp"

namespace smlab {

/// Fourier transform of the time weight
///   eta_R(t) = R^{3 sigma-1} sum_{0<j<R^{1-2 sigma}} psi(R^sigma (t - R^sigma j)),
/// i.e. R^{2 sigma-1} psi_hat(R^{-sigma} tau) sum_j exp(-2 pi i R^sigma j tau).
/// The geometric sum is evaluated in closed form as
///   exp(-pi i a (J+1)) sin(pi J a) / sin(pi a),  a = R^sigma tau mod 1,
/// with the value J at a = 0.
std::complex<double> eta_hat(double tau, const ExperimentParams& params,
                             const MollifierSpec& mollifier);

/// |eta_hat(tau)| without forming the phase factor.
double eta_hat_modulus(double tau, const ExperimentParams& params, const MollifierSpec& mollifier);

/// int eta_R = eta_hat(0) = R^{2 sigma-1} J.
double eta_mass(const ExperimentParams& params);

/// Upper bound on |eta_hat|: R^{2 sigma-1} J (|psi_hat| <= 1).
double eta_hat_bound(const ExperimentParams& params);

/// int over S^{n-1} of |eta_hat(theta.k)| d theta, by Funk-Hecke:
///   |S^{n-2}| int_{-1}^{1} |eta_hat(|k| t)| (1-t^2)^{(n-3)/2} dt.
/// Panels break at the zeros of the Dirichlet factor; inside a panel the
/// substitution t = sin(phi) removes the endpoint weight singularity.
/// Throws ContractError for k = 0.
double sphere_average_eta(const IntVec& k, const ExperimentParams& params,
                          const MollifierSpec& mollifier);

/// Fourier coefficient of phi_R(x) = phi(R^sigma x) on the torus:
/// R^{-n sigma} phi_hat(R^{-sigma} k). Real, since phi is radial.
std::complex<double> phi_hat(const IntVec& k, const ExperimentParams& params,
                             const MollifierSpec& mollifier);

/// Throws ContractError unless the mollifier matches (n, eps) and its
/// support fits in one fundamental cell once scaled by R^{-sigma}.
void check_mollifier(const ExperimentParams& params, const MollifierSpec& mollifier);

}  // namespace smlab
