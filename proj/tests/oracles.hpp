#pragma once

// Brute-force reference implementations. Nothing here calls the code under
// test except where noted (the mollifier profiles themselves).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "smlab/mollifier.hpp"
#include "smlab/params.hpp"

namespace oracle {

using IntVec = std::vector<std::int64_t>;

inline constexpr double kPi = std::numbers::pi;

// Every l in the box [-ceil(r), ceil(r)]^n with |l| < r, lexicographic.
inline std::vector<IntVec> box_scan(int n, double r) {
  const auto b = static_cast<std::int64_t>(std::ceil(r));
  std::vector<IntVec> out;
  IntVec l(n, -b);
  for (;;) {
    double s = 0.0;
    for (auto c : l) s += static_cast<double>(c * c);
    if (std::sqrt(s) < r) out.push_back(l);
    int d = n - 1;
    while (d >= 0 && l[d] == b) {
      l[d] = -b;
      --d;
    }
    if (d < 0) break;
    ++l[d];
  }
  return out;
}

// #{k integer : 0 < k < bound}, by walking k upward.
inline std::int64_t count_below(long double bound) {
  std::int64_t k = 0;
  while (static_cast<long double>(k + 1) < bound) ++k;
  return k;
}

// Torus distance over all 3^n neighbouring integer shifts.
inline double torus_distance_shifts(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double best = 1e300;
  std::vector<int> s(n, -1);
  for (;;) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double d = a[c] - b[c] + s[c];
      d2 += d * d;
    }
    best = std::min(best, d2);
    std::size_t c = 0;
    while (c < n && s[c] == 1) s[c++] = -1;
    if (c == n) break;
    ++s[c];
  }
  return std::sqrt(best);
}

// eta_hat from its defining sum: R^{2s-1} psi_hat(R^{-s} tau) sum_j e^{-2 pi i R^s j tau}.
inline std::complex<double> eta_hat_sum(double tau, const smlab::ExperimentParams& p,
                                        const smlab::MollifierSpec& m) {
  const double h = std::pow(p.R, p.sigma);
  const double bound = std::pow(p.R, 1.0 - 2.0 * p.sigma);
  std::complex<double> s = 0.0;
  for (std::int64_t j = 1; static_cast<double>(j) < bound; ++j) {
    s += std::polar(1.0, -2.0 * kPi * h * static_cast<double>(j) * tau);
  }
  return std::pow(p.R, 2.0 * p.sigma - 1.0) * m.psi_hat_exact(tau / h) * s;
}

// Radial Fourier transform in R^3 of the mollifier phi at |xi| = q:
// 4 pi int_0^{eps/2} phi(r) r^2 sinc(2 pi q r) dr, composite Simpson.
inline double phi_hat_3d(const smlab::MollifierSpec& m, double q, int panels = 4000) {
  const double a = 0.5 * m.eps();
  auto f = [&](double r) {
    const std::vector<double> x = {r, 0.0, 0.0};
    const double z = 2.0 * kPi * q * r;
    const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
    return m.phi(x) * r * r * sinc;
  };
  const double h = a / panels;
  double s = f(0.0) + f(a);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 4.0 * kPi * s * h / 3.0;
}

// int over S^2 of g(theta . k) by a product rule in (z = cos polar, azimuth)
// about the x3 axis, which is not aligned with k in the tests.
template <class G>
double sphere_grid_3d(const std::vector<double>& k, G g, int nz, int nphi) {
  double s = 0.0;
  for (int i = 0; i < nz; ++i) {
    const double z = -1.0 + (i + 0.5) * 2.0 / nz;
    const double rho = std::sqrt(1.0 - z * z);
    for (int j = 0; j < nphi; ++j) {
      const double ph = (j + 0.5) * 2.0 * kPi / nphi;
      const double dot = rho * std::cos(ph) * k[0] + rho * std::sin(ph) * k[1] + z * k[2];
      s += g(dot);
    }
  }
  return s * (2.0 / nz) * (2.0 * kPi / nphi);
}

// int_{-1/2}^{1/2} |sin(pi N t)/sin(pi t)| dt, midpoint rule on a fine grid.
inline double dirichlet_midpoint(std::int64_t N, int cells) {
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double t = -0.5 + (i + 0.5) / cells;
    s += std::abs(std::sin(kPi * N * t) / std::sin(kPi * t));
  }
  return s / cells;
}

// sum over K < |k| <= M of (1 + |k|/h)^{-(n+1)}, n = 3.
inline double lattice_shell_sum_3d(double K, std::int64_t M, double h) {
  double s = 0.0;
  for (std::int64_t a = -M; a <= M; ++a)
    for (std::int64_t b = -M; b <= M; ++b)
      for (std::int64_t c = -M; c <= M; ++c) {
        const double r = std::sqrt(static_cast<double>(a * a + b * b + c * c));
        if (r > K && r <= static_cast<double>(M)) s += std::pow(1.0 + r / h, -4.0);
      }
  return s;
}

}  // namespace oracle
