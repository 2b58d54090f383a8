#pragma once

#include <vector>

namespace smlab {

/// A point of R^n / Z^n, each coordinate reduced into [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<double> coords);

  const std::vector<double>& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

 private:
  std::vector<double> coords_;
};

/// x - floor(x), folded so that the result is always in [0, 1).
double wrap_unit(double x);

/// Distance on the flat torus: the Euclidean distance minimised over integer
/// translates. Always at most sqrt(n)/2.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Same metric on raw reduced coordinates, squared. Hot-loop variant.
double torus_distance_sq(const double* a, const double* b, std::size_t n);

}  // namespace smlab
