#pragma once

#include <cstdint>
#include <vector>

namespace smlab {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes on [-1, 1], increasing nodes.
GaussRule gauss_legendre(int order);

/// Same rule affinely mapped to [a, b].
GaussRule gauss_legendre(int order, double a, double b);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);
/// Surface measure of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

/// Radical-inverse (Halton) coordinate of `index` in prime `base`.
double radical_inverse(std::uint64_t index, unsigned base);
/// The first `count` primes.
std::vector<unsigned> first_primes(std::size_t count);

}  // namespace smlab
