#include "smlab/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smlab/errors.hpp"
#include "smlab/quadrature.hpp"

namespace smlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProfileNodes = 1024;
constexpr int kInnerNodes = 192;
constexpr double kPsiTableMax = 128.0;  // = resolved_limit of the 1024-node transform
constexpr double kPsiTableStep = 1.0 / 256.0;

}  // namespace

double bump(double r, double shape) {
  const double gap = 1.0 - r * r;
  if (gap <= 0.0) return 0.0;
  return std::exp(-shape / gap);
}

EvenCosineTransform::EvenCosineTransform(std::vector<double> nodes,
                                         std::vector<double> weighted_values)
    : nodes_(std::move(nodes)), weighted_(std::move(weighted_values)) {
  // Gauss-Legendre with m nodes on [0, 1] integrates cos(2 pi kappa s)
  // reliably while 2 pi kappa stays well below m.
  resolved_limit_ = static_cast<double>(nodes_.size()) / 8.0;
}

double EvenCosineTransform::operator()(double kappa) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weighted_[i] * std::cos(kTwoPi * kappa * nodes_[i]);
  return s;
}

double EvenCosineTransform::derivative(double kappa) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    s -= weighted_[i] * kTwoPi * nodes_[i] * std::sin(kTwoPi * kappa * nodes_[i]);
  }
  return s;
}

TransformTable::TransformTable(const EvenCosineTransform& exact, double kappa_max, double step)
    : exact_(exact), step_(step) {
  const auto cells = static_cast<std::size_t>(std::ceil(kappa_max / step));
  kappa_max_ = static_cast<double>(cells) * step;
  value_.assign(cells + 1, 0.0);
  slope_.assign(cells + 1, 0.0);
  std::vector<double> mid(cells, 0.0);

  // cos and sin of 2 pi kappa s on the grid by rotation, re-anchored every
  // 64 cells; same node order as the exact transform.
  const auto& nodes = exact_.nodes();
  const auto& weighted = exact_.weighted();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double w = weighted[j];
    const double ws = w * kTwoPi * nodes[j];
    const double rc = std::cos(kTwoPi * step * nodes[j]);
    const double rs = std::sin(kTwoPi * step * nodes[j]);
    double c = 1.0, s = 0.0, mc = 0.0, ms = 0.0;
    for (std::size_t i = 0; i <= cells; ++i) {
      if (i % 64 == 0) {
        const double a = kTwoPi * static_cast<double>(i) * step * nodes[j];
        const double b = kTwoPi * (static_cast<double>(i) + 0.5) * step * nodes[j];
        c = std::cos(a);
        s = std::sin(a);
        mc = std::cos(b);
        ms = std::sin(b);
      }
      value_[i] += w * c;
      slope_[i] -= ws * s;
      if (i < cells) mid[i] += w * mc;
      const double c2 = c * rc - s * rs;
      s = s * rc + c * rs;
      c = c2;
      const double mc2 = mc * rc - ms * rs;
      ms = ms * rc + mc * rs;
      mc = mc2;
    }
  }
  max_error_ = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double at = (static_cast<double>(i) + 0.5) * step;
    max_error_ = std::max(max_error_, std::abs((*this)(at) - mid[i]));
  }
}

double TransformTable::operator()(double kappa) const {
  const double a = std::abs(kappa);
  if (a >= kappa_max_) return exact_(a);
  const double pos = a / step_;
  const auto i = static_cast<std::size_t>(pos);
  const double u = pos - static_cast<double>(i);
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  return h00 * value_[i] + h10 * step_ * slope_[i] + h01 * value_[i + 1] +
         h11 * step_ * slope_[i + 1];
}

MollifierSpec::MollifierSpec(int n, double eps, double shape) : n_(n), eps_(eps), shape_(shape) {
  if (n < 1) throw ContractError("mollifier dimension must be >= 1");
  if (!(eps > 0.0)) throw ContractError("mollifier eps must be positive");
  if (!(shape > 0.0)) throw ContractError("mollifier shape must be positive");
  build();
}

void MollifierSpec::build() {
  const GaussRule outer = gauss_legendre(kProfileNodes, 0.0, 1.0);

  // Normalisations of the unit-scale profiles.
  double radial = 0.0;
  double line = 0.0;
  for (int i = 0; i < kProfileNodes; ++i) {
    const double r = outer.nodes[i];
    const double b = bump(r, shape_);
    radial += outer.weights[i] * b * std::pow(r, n_ - 1);
    line += outer.weights[i] * b;
  }
  phi_norm_ = unit_sphere_area(n_) * radial;
  psi_norm_ = 2.0 * line;

  const double peak_limit_phi = std::pow(2.0 / eps_, n_);
  if (!(phi_peak() < peak_limit_phi)) {
    throw ContractError("phi peak exceeds (2/eps)^n; lower the bump shape parameter");
  }
  if (!(psi_peak() < 2.0 / eps_)) {
    throw ContractError("psi peak exceeds 2/eps; lower the bump shape parameter");
  }

  std::vector<double> psi_weighted(kProfileNodes);
  std::vector<double> phi_weighted(kProfileNodes);
  const double sphere = n_ >= 2 ? unit_sphere_area(n_ - 1) : 1.0;
  const GaussRule inner_unit = gauss_legendre(kInnerNodes, 0.0, 1.0);
  for (int i = 0; i < kProfileNodes; ++i) {
    const double s = outer.nodes[i];
    psi_weighted[i] = 2.0 * outer.weights[i] * bump(s, shape_) / psi_norm_;

    double projection = 0.0;
    if (n_ == 1) {
      projection = bump(s, shape_) / phi_norm_;
    } else {
      const double top = std::sqrt(std::max(0.0, 1.0 - s * s));
      for (int j = 0; j < kInnerNodes; ++j) {
        const double w = top * inner_unit.nodes[j];
        projection += inner_unit.weights[j] * bump(std::sqrt(s * s + w * w), shape_) *
                      std::pow(w, n_ - 2);
      }
      projection *= top * sphere / phi_norm_;
    }
    phi_weighted[i] = 2.0 * outer.weights[i] * projection;
  }
  phi_exact_ = EvenCosineTransform(outer.nodes, std::move(phi_weighted));
  psi_table_ = TransformTable(EvenCosineTransform(outer.nodes, std::move(psi_weighted)),
                              kPsiTableMax, kPsiTableStep);

  // sup over kappa of |P_hat(kappa)| (1 + 2 kappa / eps)^{n+1}: coarse scan,
  // then refine around the best coarse cells.
  const double limit = phi_exact_.resolved_limit();
  auto weighted = [&](double kappa) {
    return std::abs(phi_exact_(kappa)) * std::pow(1.0 + 2.0 * kappa / eps_, n_ + 1);
  };
  const double coarse = 0.05;
  std::vector<std::pair<double, double>> scan;
  for (double k = 0.0; k <= limit; k += coarse) scan.emplace_back(weighted(k), k);
  std::sort(scan.begin(), scan.end(), std::greater<>());
  double best = scan.front().first;
  const std::size_t refine = std::min<std::size_t>(8, scan.size());
  for (std::size_t c = 0; c < refine; ++c) {
    const double centre = scan[c].second;
    for (double k = std::max(0.0, centre - coarse); k <= centre + coarse; k += coarse / 100.0) {
      best = std::max(best, weighted(k));
    }
  }
  decay_constant_ = best * (1.0 + 1e-3);
}

double MollifierSpec::phi(std::span<const double> x) const {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double r = 2.0 * std::sqrt(r2) / eps_;
  return std::pow(2.0 / eps_, n_) * bump(r, shape_) / phi_norm_;
}

double MollifierSpec::psi(double t) const {
  return (2.0 / eps_) * bump(2.0 * t / eps_, shape_) / psi_norm_;
}

double MollifierSpec::phi_peak() const {
  return std::pow(2.0 / eps_, n_) * bump(0.0, shape_) / phi_norm_;
}

double MollifierSpec::psi_peak() const { return (2.0 / eps_) * bump(0.0, shape_) / psi_norm_; }

double MollifierSpec::phi_hat(double freq) const { return phi_exact_(0.5 * eps_ * freq); }
double MollifierSpec::psi_hat(double omega) const { return psi_table_(0.5 * eps_ * omega); }
double MollifierSpec::psi_hat_exact(double omega) const {
  return psi_table_.exact()(0.5 * eps_ * omega);
}

double MollifierSpec::phi_integral() const {
  // Radial quadrature on the physical support, independent of the
  // projection used for phi_hat.
  const double radius = 0.5 * eps_;
  const GaussRule rule = gauss_legendre(kProfileNodes, 0.0, radius);
  double s = 0.0;
  std::vector<double> x(n_, 0.0);
  for (int i = 0; i < kProfileNodes; ++i) {
    x[0] = rule.nodes[i];
    s += rule.weights[i] * phi(x) * std::pow(rule.nodes[i], n_ - 1);
  }
  return unit_sphere_area(n_) * s;
}

double MollifierSpec::psi_integral() const {
  const GaussRule rule = gauss_legendre(kProfileNodes, -0.5 * eps_, 0.5 * eps_);
  double s = 0.0;
  for (int i = 0; i < kProfileNodes; ++i) s += rule.weights[i] * psi(rule.nodes[i]);
  return s;
}

}  // namespace smlab
