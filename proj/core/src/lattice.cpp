#include "smlab/lattice.hpp"

#include <cmath>
#include <string>

#include "smlab/errors.hpp"
#include "smlab/parallel.hpp"
#include "smlab/quadrature.hpp"

namespace smlab {

std::int64_t norm_sq(const IntVec& v) {
  std::int64_t s = 0;
  for (auto c : v) s += c * c;
  return s;
}

std::vector<IntVec> freq_centers(const ExperimentParams& params, std::size_t cap) {
  // |l| < R^sigma  <=>  |l|^2 < R^{2 sigma}; the bound is snapped so that an
  // integral R^{2 sigma} is treated as exact.
  const double bound_sq = snap_integer(std::pow(params.R, 2.0 * params.sigma));
  const auto half = static_cast<std::int64_t>(std::ceil(std::sqrt(bound_sq)));
  const int n = params.n;

  // Rough count first so an absurd request fails before allocating.
  const double estimate = unit_ball_volume(n) * std::pow(std::sqrt(bound_sq), n);
  if (estimate > 2.0 * static_cast<double>(cap)) {
    throw ResourceError("frequency-centre count ~" + std::to_string(estimate) +
                        " exceeds the cap of " + std::to_string(cap));
  }

  std::vector<IntVec> out;
  IntVec l(n, -half);
  for (;;) {
    if (static_cast<double>(norm_sq(l)) < bound_sq) {
      if (out.size() == cap) {
        throw ResourceError("frequency-centre count exceeds the cap of " + std::to_string(cap));
      }
      out.push_back(l);
    }
    int d = n - 1;
    while (d >= 0 && l[d] == half) {
      l[d] = -half;
      --d;
    }
    if (d < 0) break;
    ++l[d];
  }
  return out;
}

std::vector<double> time_lattice(const ExperimentParams& params) {
  const std::int64_t count = params.time_count();
  const double step = params.time_spacing();
  std::vector<double> t(static_cast<std::size_t>(count));
  for (std::int64_t k = 1; k <= count; ++k) t[k - 1] = static_cast<double>(k) * step;
  return t;
}

LatticeFamily build_lattice_family(const ExperimentParams& params, std::size_t cap) {
  LatticeFamily f;
  f.freq_centers = freq_centers(params, cap);
  f.time_points = time_lattice(params);
  f.space_spacing = params.space_spacing();
  f.space_radius = 2.0;
  return f;
}

std::vector<SpacePoint> space_lattice_sampler(const ExperimentParams& params,
                                              std::size_t count, std::uint64_t seed) {
  if (count < 1) throw ContractError("space_lattice_sampler needs count >= 1");
  const int n = params.n;
  const double spacing = params.space_spacing();
  // |R^{sigma-1} m| < 2  <=>  |m|^2 < (2 R^{1-sigma})^2
  const double label_bound = 2.0 * params.center_spacing();
  const double bound_sq = snap_integer(label_bound * label_bound);
  const auto half = static_cast<std::int64_t>(std::ceil(label_bound));
  const auto width = static_cast<std::uint64_t>(2 * half + 1);

  SplitMix rng(task_seed(seed, 0x5ace));
  std::vector<SpacePoint> out;
  out.reserve(count);
  while (out.size() < count) {
    IntVec m(n);
    for (auto& c : m) c = static_cast<std::int64_t>(rng.next() % width) - half;
    if (!(static_cast<double>(norm_sq(m)) < bound_sq)) continue;
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = spacing * static_cast<double>(m[i]);
    out.push_back({std::move(m), std::move(x)});
  }
  return out;
}

}  // namespace smlab
