#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smlab/datum.hpp"
#include "smlab/lattice.hpp"

namespace smlab {

using Complex = std::complex<double>;

/// Free evolution in the rescaled time convention,
///   u(x, t) = N * sum_nodes w_j exp(2 pi i (x.xi_j - (t/R) |xi_j|^2)),
/// the quadrature form of N * int_Omega e^{2 pi i x.xi - 2 pi i (t/R)|xi|^2}
/// d xi. Nodes already carry the modulation shift. Node terms are reduced
/// pairwise in node order.
Complex evaluate(const Datum& d, std::span<const double> x, double t);

/// u(x, k * dt) for k = 1..count where dt = R^{2 sigma-1}. Uses a phase
/// recurrence in k with exact re-anchoring every 32 steps; agrees with
/// evaluate() to ~1e-13 relative.
std::vector<Complex> evaluate_time_lattice(const Datum& d, std::span<const double> x,
                                           std::int64_t count);

/// A point of the space-time set Lambda: x = R^{sigma-1} m + u with
/// |m| < 2 R^{1-sigma}, |u| < eps/R, and t = R^{2 sigma-1} k with
/// 0 < k < R^{1-2 sigma}.
struct LambdaPoint {
  IntVec m;
  Vec u;
  std::int64_t k = 1;
};

/// x.xi = I1 + I2 + I3 + I4 for x = R^{sigma-1} m + u, xi = R^{1-sigma} l + v.
struct PhaseBreakdownSpace {
  std::int64_t I1 = 0;  // m.l
  double I2 = 0.0;      // R^{sigma-1} m.v
  double I3 = 0.0;      // R^{1-sigma} l.u
  double I4 = 0.0;      // u.v
};

/// (t/R)|xi|^2 = II1 + II2 + II3 for t = R^{2 sigma-1} k.
struct PhaseBreakdownTime {
  std::int64_t II1 = 0;  // k |l|^2
  double II2 = 0.0;      // R^{2(sigma-1)} k |v|^2
  double II3 = 0.0;      // 2 R^{sigma-1} k l.v
};

/// Throws ContractError unless |m| < 2 R^{1-sigma}, |u| < eps/R,
/// |l| < R^sigma and |v| <= rho (closed ball, 1e-12 rounding allowance).
PhaseBreakdownSpace phase_decompose_space(const IntVec& m, std::span<const double> u,
                                          const IntVec& l, std::span<const double> v,
                                          const ExperimentParams& params);

/// Throws ContractError unless 0 < k < R^{1-2 sigma} and l, v are as above.
PhaseBreakdownTime phase_decompose_time(std::int64_t k, const IntVec& l,
                                        std::span<const double> v,
                                        const ExperimentParams& params);

/// u at a point of Lambda for an unmodulated datum. The integer parts m.l
/// and k|l|^2 cancel modulo 1 in exact arithmetic, so only the small terms
/// I2+I3+I4-II2-II3 enter the exponential.
Complex evaluate_lambda(const Datum& d, const LambdaPoint& p);

/// Same as evaluate_lambda for every k = 1..time_count().
std::vector<Complex> evaluate_lambda_times(const Datum& d, const IntVec& m,
                                           std::span<const double> u);

/// cos(2 pi / 10): the real part of every node term is at least this once the
/// space window (1/20) and time window (1/20) are added.
double interference_floor();

struct InterferenceReport {
  double min_ratio = 0.0;  // min |u| / sqrt|Omega|
  Vec argmin_x;
  double argmin_t = 0.0;
  std::size_t points = 0;  // space samples x times
  double tolerance = 0.01;
  bool passed = false;
};

/// Samples of Lambda: `space_samples` lattice points from
/// space_lattice_sampler, each optionally perturbed uniformly in
/// B(0, eps/R), each paired with every lattice time.
std::vector<LambdaPoint> sample_lambda(const ExperimentParams& params, std::size_t space_samples,
                                       std::uint64_t seed, bool perturb);

/// Minimum of |u| / sqrt|Omega| over all samples x all lattice times. The
/// datum must be unmodulated. Passing means min_ratio >= floor - tolerance.
InterferenceReport verify_interference(const Datum& d, std::span<const LambdaPoint> space_points,
                                       double tolerance = 0.01);

/// | |u_theta(x, t)| - |u(x - t theta, t)| | where d_theta is d_plain with
/// shift (R/2) theta. Throws ContractError when the two data do not share
/// parameters and centres, or d_plain is modulated.
double galilean_check(const Datum& d_theta, const Datum& d_plain, std::span<const double> x,
                      double t);

/// One row of the batch CSV: x_1..x_n, t, re, im, modulus, ratio.
struct EvaluationRow {
  Vec x;
  double t = 0.0;
  Complex value;
  double ratio = 0.0;  // |u| / sqrt|Omega|
};

std::vector<EvaluationRow> evaluate_batch(const Datum& d,
                                          std::span<const std::pair<Vec, double>> points);
std::string evaluation_csv_header(int n);
std::string evaluation_csv_row(const EvaluationRow& row);

}  // namespace smlab
