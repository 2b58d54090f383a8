#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smlab {

/// sin(pi N t) / sin(pi t), with the removable singularities at integer t
/// filled in by their limits (+-N).
double dirichlet_kernel(double t, std::int64_t N);

/// int_a^b |sin(pi N t)/sin(pi t)| dt. Panels break at every zero m/N of
/// the kernel so each panel integrand is smooth; Gauss-Legendre per panel.
double dirichlet_abs_integral(std::int64_t N, double a, double b, int nodes_per_panel = 16);

/// L1 norm over one period, int_{-1/2}^{1/2} |D_N|. N = 1 returns exactly 1.
double dirichlet_l1(std::int64_t N);

struct DirichletRow {
  std::int64_t N = 0;
  double value = 0.0;
  double running_slope = 0.0;  // least-squares slope vs ln N over rows so far
};

/// Rows for N = nmin, 2 nmin, 4 nmin, ... <= nmax. The first row's slope is
/// NaN (a single point has no slope).
std::vector<DirichletRow> dirichlet_sweep(std::int64_t nmin, std::int64_t nmax);
std::string dirichlet_csv(const std::vector<DirichletRow>& rows);

}  // namespace smlab
