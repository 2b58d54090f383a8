#pragma once

#include <span>
#include <vector>

namespace smlab {

/// exp(-shape / (1 - r^2)) for |r| < 1, zero elsewhere.
double bump(double r, double shape);

/// F(kappa) = int_{-1}^{1} p(s) cos(2 pi kappa s) ds for an even profile p
/// given at Gauss-Legendre nodes of [0, 1].
class EvenCosineTransform {
 public:
  EvenCosineTransform() = default;
  EvenCosineTransform(std::vector<double> nodes, std::vector<double> weighted_values);

  double operator()(double kappa) const;
  double derivative(double kappa) const;
  /// kappa above which the node count no longer resolves the oscillation.
  double resolved_limit() const { return resolved_limit_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weighted() const { return weighted_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weighted_;  // 2 * w_i * p(s_i)
  double resolved_limit_ = 0.0;
};

/// Cubic Hermite table of an EvenCosineTransform on [0, kappa_max] with
/// exact evaluation outside. max_error() is the largest deviation from the
/// exact transform measured at the cell midpoints.
class TransformTable {
 public:
  TransformTable() = default;
  TransformTable(const EvenCosineTransform& exact, double kappa_max, double step);

  double operator()(double kappa) const;
  double max_error() const { return max_error_; }
  const EvenCosineTransform& exact() const { return exact_; }

 private:
  EvenCosineTransform exact_;
  double step_ = 0.0;
  double kappa_max_ = 0.0;
  std::vector<double> value_;
  std::vector<double> slope_;
  double max_error_ = 0.0;
};

/// The two C^infinity bumps of the density certificate.
///
/// phi lives on R^n (and on the torus through its representative near 0):
/// radial, supported in B(0, eps/2), unit integral, peak below (2/eps)^n.
/// psi lives on R: even, supported in (-eps/2, eps/2), unit integral, peak
/// below 2/eps. Both are rescaled copies of bump(r, shape).
///
/// Their Fourier transforms are cosine transforms of one-dimensional even
/// profiles: psi directly, phi through its projection onto a line,
///   P(s) = |S^{n-2}| int_0^{sqrt(1-s^2)} B(sqrt(s^2 + w^2)) w^{n-2} dw,
/// which carries the whole radial transform without Bessel functions.
class MollifierSpec {
 public:
  MollifierSpec(int n, double eps, double shape = 1.0);

  int dim() const { return n_; }
  double eps() const { return eps_; }
  double shape() const { return shape_; }

  double phi(std::span<const double> x) const;
  double psi(double t) const;
  double phi_peak() const;
  double psi_peak() const;

  /// Fourier transform of phi at a frequency of modulus `freq`.
  double phi_hat(double freq) const;
  /// Fourier transform of psi at `omega`, from the table.
  double psi_hat(double omega) const;
  double psi_hat_exact(double omega) const;
  /// Interpolation error bound of psi_hat (measured).
  double psi_table_error() const { return psi_table_.max_error(); }
  /// Largest profile frequency at which psi_hat is trusted.
  double psi_resolved_limit() const { return psi_table_.exact().resolved_limit(); }

  /// C_phi = sup_xi |phi_hat(xi)| (1 + |xi|)^{n+1}, measured on a refined
  /// grid and inflated by 1e-3 to cover the space between grid points.
  double phi_decay_constant() const { return decay_constant_; }

  /// Integrals of phi and psi by quadrature on their radial profiles.
  double phi_integral() const;
  double psi_integral() const;

 private:
  void build();

  int n_;
  double eps_;
  double shape_;
  double phi_norm_ = 0.0;  // int over the unit ball of bump(|y|)
  double psi_norm_ = 0.0;  // int_{-1}^{1} bump
  EvenCosineTransform phi_exact_;
  TransformTable psi_table_;
  double decay_constant_ = 0.0;
};

}  // namespace smlab
