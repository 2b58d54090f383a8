#include "smlab/torus.hpp"

#include <cmath>

namespace smlab {

double wrap_unit(double x) {
  double r = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.0.
  if (r >= 1.0) r = 0.0;
  return r;
}

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c = wrap_unit(c);
}

double torus_distance_sq(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::abs(a[i] - b[i]);
    if (d > 0.5) d = 1.0 - d;
    s += d * d;
  }
  return s;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  // Coordinatewise folding is the minimum over the 3^n adjacent shifts for
  // reduced inputs; the shifts decouple across coordinates.
  return std::sqrt(torus_distance_sq(a.coords().data(), b.coords().data(), a.dim()));
}

}  // namespace smlab
