#include "smlab/dirichlet.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "smlab/errors.hpp"
#include "smlab/format.hpp"
#include "smlab/quadrature.hpp"
#include "smlab/sweep.hpp"

namespace smlab {

double dirichlet_kernel(double t, std::int64_t N) {
  const double nearest = std::nearbyint(t);
  const double r = t - nearest;
  if (r == 0.0) {
    // Limit at an integer m is N (-1)^{m (N-1)}.
    const auto m = static_cast<std::int64_t>(nearest);
    return ((m * (N - 1)) % 2 == 0) ? static_cast<double>(N) : -static_cast<double>(N);
  }
  return std::sin(std::numbers::pi * static_cast<double>(N) * t) / std::sin(std::numbers::pi * t);
}

double dirichlet_abs_integral(std::int64_t N, double a, double b, int nodes_per_panel) {
  if (N < 1) throw ContractError("Dirichlet kernel needs N >= 1");
  if (!(b > a)) return 0.0;
  const GaussRule unit = gauss_legendre(nodes_per_panel);
  const double n = static_cast<double>(N);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < nodes_per_panel; ++i) {
      s += unit.weights[i] * std::abs(dirichlet_kernel(mid + half * unit.nodes[i], N));
    }
    return s * half;
  };
  double total = 0.0;
  auto m = static_cast<std::int64_t>(std::floor(a * n));
  double lo = a;
  for (;;) {
    const double zero = static_cast<double>(m + 1) / n;
    const double hi = std::min(zero, b);
    if (hi > lo) total += panel(lo, hi);
    if (zero >= b) break;
    lo = zero;
    ++m;
  }
  return total;
}

double dirichlet_l1(std::int64_t N) {
  if (N < 1) throw ContractError("dirichlet_l1 needs N >= 1");
  // D_1 is identically one.
  if (N == 1) return 1.0;
  return 2.0 * dirichlet_abs_integral(N, 0.0, 0.5);
}

std::vector<DirichletRow> dirichlet_sweep(std::int64_t nmin, std::int64_t nmax) {
  if (nmin < 1 || nmax < nmin) throw ContractError("dirichlet sweep needs 1 <= nmin <= nmax");
  std::vector<DirichletRow> rows;
  std::vector<double> logs, values;
  for (std::int64_t N = nmin; N <= nmax; N *= 2) {
    DirichletRow row;
    row.N = N;
    row.value = dirichlet_l1(N);
    logs.push_back(std::log(static_cast<double>(N)));
    values.push_back(row.value);
    row.running_slope = logs.size() >= 2 ? fit_line(logs, values).slope
                                         : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
    if (N > nmax / 2) break;
  }
  return rows;
}

std::string dirichlet_csv(const std::vector<DirichletRow>& rows) {
  std::string out = "N,value,running_slope\n";
  for (const auto& r : rows) {
    out += std::to_string(r.N) + "," + format_double(r.value) + "," +
           format_double(r.running_slope) + "\n";
  }
  return out;
}

}  // namespace smlab
