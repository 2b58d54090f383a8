#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smlab/params.hpp"

namespace smlab {

using IntVec = std::vector<std::int64_t>;
using Vec = std::vector<double>;

/// Default cap on the number of frequency centres.
inline constexpr std::size_t kDefaultCenterCap = 2'000'000;

/// The three lattices of the construction. The spatial lattice
/// R^{sigma-1} Z^n cap B(0, 2) has about R^{n(1-sigma)} points and is never
/// materialised; use space_lattice_sampler instead.
struct LatticeFamily {
  std::vector<IntVec> freq_centers;  // labels l, centre is R^{1-sigma} l
  std::vector<double> time_points;   // R^{2 sigma-1} k, 0 < k < R^{1-2 sigma}
  double space_spacing = 0.0;
  double space_radius = 2.0;
};

/// All l in Z^n with |l| < R^sigma, lexicographic order.
std::vector<IntVec> freq_centers(const ExperimentParams& params,
                                 std::size_t cap = kDefaultCenterCap);

/// R^{2 sigma-1} k for 0 < k < R^{1-2 sigma}, increasing. Point k is
/// computed as k * time_spacing() so the spacing is reproducible bit for bit.
std::vector<double> time_lattice(const ExperimentParams& params);

LatticeFamily build_lattice_family(const ExperimentParams& params,
                                   std::size_t cap = kDefaultCenterCap);

/// A point of the spatial lattice, x = R^{sigma-1} m.
struct SpacePoint {
  IntVec m;
  Vec x;
};

/// Uniform sample (with replacement) of the integer labels m with
/// |R^{sigma-1} m| < 2. Deterministic in `seed`.
std::vector<SpacePoint> space_lattice_sampler(const ExperimentParams& params,
                                              std::size_t count, std::uint64_t seed);

/// Squared Euclidean norm of an integer vector.
std::int64_t norm_sq(const IntVec& v);

}  // namespace smlab
