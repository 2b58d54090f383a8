#include "smlab/propagator.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "smlab/errors.hpp"
#include "smlab/format.hpp"
#include "smlab/parallel.hpp"

namespace smlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kAnchorEvery = 32;

double frac_centered(double v) { return v - std::nearbyint(v); }

double dot(const double* a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

// Phase of node j at (x, t) reduced to [-1, 1]; both pieces are reduced
// separately so neither large product loses the fractional part of the other.
double node_phase(const Datum& d, std::size_t j, std::span<const double> x, double t) {
  const double space = frac_centered(dot(d.node_xi(j), x));
  const double time = frac_centered(t / d.params().R * d.node_norm_sq()[j]);
  return space - time;
}

void check_dim(const Datum& d, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(d.dim())) {
    throw ContractError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                        std::to_string(d.dim()));
  }
}

}  // namespace

double interference_floor() { return std::cos(kTwoPi / 10.0); }

Complex evaluate(const Datum& d, std::span<const double> x, double t) {
  check_dim(d, x);
  const std::size_t count = d.node_count();
  const auto w = d.node_weights();
  std::vector<Complex> terms(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double phase = kTwoPi * node_phase(d, j, x, t);
    terms[j] = Complex(w[j] * std::cos(phase), w[j] * std::sin(phase));
  }
  return d.normalization() * pairwise_sum(terms);
}

std::vector<Complex> evaluate_time_lattice(const Datum& d, std::span<const double> x,
                                           std::int64_t count) {
  check_dim(d, x);
  const std::size_t nodes = d.node_count();
  const auto w = d.node_weights();
  const auto sq = d.node_norm_sq();
  const double dt = d.params().time_spacing();
  const double R = d.params().R;

  std::vector<double> space(nodes), step_re(nodes), step_im(nodes), z_re(nodes), z_im(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    space[j] = frac_centered(dot(d.node_xi(j), x));
    const double step = kTwoPi * frac_centered(dt / R * sq[j]);
    step_re[j] = std::cos(step);
    step_im[j] = -std::sin(step);
  }

  std::vector<Complex> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  std::vector<Complex> terms(nodes);
  for (std::int64_t k = 1; k <= count; ++k) {
    if ((k - 1) % kAnchorEvery == 0) {
      const double t = static_cast<double>(k) * dt;
      for (std::size_t j = 0; j < nodes; ++j) {
        const double phase = kTwoPi * (space[j] - frac_centered(t / R * sq[j]));
        z_re[j] = w[j] * std::cos(phase);
        z_im[j] = w[j] * std::sin(phase);
      }
    } else {
      for (std::size_t j = 0; j < nodes; ++j) {
        const double re = z_re[j] * step_re[j] - z_im[j] * step_im[j];
        const double im = z_re[j] * step_im[j] + z_im[j] * step_re[j];
        z_re[j] = re;
        z_im[j] = im;
      }
    }
    for (std::size_t j = 0; j < nodes; ++j) terms[j] = Complex(z_re[j], z_im[j]);
    out[k - 1] = d.normalization() * pairwise_sum(terms);
  }
  return out;
}

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

void check_space_form(const IntVec& m, std::span<const double> u, const ExperimentParams& p) {
  const double label_bound = 2.0 * p.center_spacing();
  if (m.size() != static_cast<std::size_t>(p.n) || u.size() != static_cast<std::size_t>(p.n)) {
    throw ContractError("lattice point has the wrong dimension");
  }
  if (!(std::sqrt(static_cast<double>(norm_sq(m))) < label_bound)) {
    throw ContractError("spatial label m violates |m| < 2 R^{1-sigma}");
  }
  if (!(norm(u) < p.eps / p.R)) throw ContractError("perturbation u violates |u| < eps/R");
}

void check_freq_form(const IntVec& l, std::span<const double> v, const ExperimentParams& p) {
  if (l.size() != static_cast<std::size_t>(p.n) || v.size() != static_cast<std::size_t>(p.n)) {
    throw ContractError("frequency point has the wrong dimension");
  }
  if (!(static_cast<double>(norm_sq(l)) < snap_integer(std::pow(p.R, 2.0 * p.sigma)))) {
    throw ContractError("frequency label l violates |l| < R^sigma");
  }
  if (!(norm(v) <= p.rho * (1.0 + 1e-12))) throw ContractError("offset v violates |v| <= rho");
}

void check_time_form(std::int64_t k, const ExperimentParams& p) {
  if (!(k > 0 && k <= p.time_count())) {
    throw ContractError("time index k = " + std::to_string(k) + " is not in (0, R^{1-2 sigma})");
  }
}

std::int64_t int_dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double mixed_dot(const IntVec& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
  return s;
}

}  // namespace

PhaseBreakdownSpace phase_decompose_space(const IntVec& m, std::span<const double> u,
                                          const IntVec& l, std::span<const double> v,
                                          const ExperimentParams& params) {
  check_space_form(m, u, params);
  check_freq_form(l, v, params);
  PhaseBreakdownSpace out;
  out.I1 = int_dot(m, l);
  out.I2 = params.space_spacing() * mixed_dot(m, v);
  out.I3 = params.center_spacing() * mixed_dot(l, u);
  double uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) uv += u[i] * v[i];
  out.I4 = uv;
  return out;
}

PhaseBreakdownTime phase_decompose_time(std::int64_t k, const IntVec& l,
                                        std::span<const double> v,
                                        const ExperimentParams& params) {
  check_time_form(k, params);
  check_freq_form(l, v, params);
  PhaseBreakdownTime out;
  out.II1 = k * norm_sq(l);
  double vv = 0.0;
  for (double c : v) vv += c * c;
  const double kd = static_cast<double>(k);
  out.II2 = std::pow(params.R, 2.0 * (params.sigma - 1.0)) * kd * vv;
  out.II3 = 2.0 * params.space_spacing() * kd * mixed_dot(l, v);
  return out;
}

namespace {

// Per-node small phases A_j (space part) and B_j (time part per unit k) at a
// lattice point, so that the phase at time index k is A_j - k B_j modulo 1.
struct LambdaPhases {
  std::vector<double> space;
  std::vector<double> time_per_k;
};

LambdaPhases lambda_phases(const Datum& d, const IntVec& m, std::span<const double> u) {
  if (d.modulated()) {
    throw ContractError("lattice evaluation needs an unmodulated datum");
  }
  const auto& p = d.params();
  check_space_form(m, u, p);
  const int n = p.n;
  const double space_spacing = p.space_spacing();
  const double center_spacing = p.center_spacing();
  const double time_sq = std::pow(p.R, 2.0 * (p.sigma - 1.0));
  const BallRule& ball = d.ball();

  LambdaPhases out;
  out.space.resize(d.node_count());
  out.time_per_k.resize(d.node_count());
  std::size_t j = 0;
  for (const auto& l : d.centers()) {
    const double lu = center_spacing * mixed_dot(l, u);
    for (std::size_t b = 0; b < ball.size(); ++b, ++j) {
      const double* v = ball.offset(b);
      double mv = 0.0, uv = 0.0, lv = 0.0, vv = 0.0;
      for (int i = 0; i < n; ++i) {
        mv += static_cast<double>(m[i]) * v[i];
        uv += u[i] * v[i];
        lv += static_cast<double>(l[i]) * v[i];
        vv += v[i] * v[i];
      }
      out.space[j] = space_spacing * mv + lu + uv;
      out.time_per_k[j] = time_sq * vv + 2.0 * space_spacing * lv;
    }
  }
  return out;
}

Complex lambda_sum(const Datum& d, const LambdaPhases& ph, std::int64_t k,
                   std::vector<Complex>& terms) {
  const auto w = d.node_weights();
  const double kd = static_cast<double>(k);
  terms.resize(d.node_count());
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double phase = kTwoPi * (ph.space[j] - kd * ph.time_per_k[j]);
    terms[j] = Complex(w[j] * std::cos(phase), w[j] * std::sin(phase));
  }
  return d.normalization() * pairwise_sum(terms);
}

}  // namespace

Complex evaluate_lambda(const Datum& d, const LambdaPoint& p) {
  check_time_form(p.k, d.params());
  const auto ph = lambda_phases(d, p.m, p.u);
  std::vector<Complex> terms;
  return lambda_sum(d, ph, p.k, terms);
}

std::vector<Complex> evaluate_lambda_times(const Datum& d, const IntVec& m,
                                           std::span<const double> u) {
  const auto ph = lambda_phases(d, m, u);
  const std::int64_t count = d.params().time_count();
  std::vector<Complex> out(static_cast<std::size_t>(count));
  std::vector<Complex> terms;
  for (std::int64_t k = 1; k <= count; ++k) out[k - 1] = lambda_sum(d, ph, k, terms);
  return out;
}

std::vector<LambdaPoint> sample_lambda(const ExperimentParams& params, std::size_t space_samples,
                                       std::uint64_t seed, bool perturb) {
  auto lattice = space_lattice_sampler(params, space_samples, seed);
  const double radius = params.eps / params.R;
  std::vector<LambdaPoint> out;
  out.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    LambdaPoint p;
    p.m = std::move(lattice[i].m);
    p.u.assign(params.n, 0.0);
    if (perturb) {
      SplitMix rng(task_seed(seed, 0x10000 + i));
      for (;;) {
        double r2 = 0.0;
        for (auto& c : p.u) {
          c = 2.0 * rng.uniform() - 1.0;
          r2 += c * c;
        }
        if (r2 < 1.0) break;
      }
      for (auto& c : p.u) c *= radius;
    }
    out.push_back(std::move(p));
  }
  return out;
}

InterferenceReport verify_interference(const Datum& d, std::span<const LambdaPoint> space_points,
                                       double tolerance) {
  const double root_measure = std::sqrt(d.omega_measure());
  const std::int64_t times = d.params().time_count();
  struct Local {
    double ratio = std::numeric_limits<double>::infinity();
    std::int64_t k = 0;
  };
  std::vector<Local> best(space_points.size());
  parallel_for(space_points.size(), [&](std::size_t i) {
    const auto values = evaluate_lambda_times(d, space_points[i].m, space_points[i].u);
    for (std::int64_t k = 1; k <= times; ++k) {
      const double r = std::abs(values[k - 1]) / root_measure;
      if (r < best[i].ratio) best[i] = {r, k};
    }
  });

  InterferenceReport report;
  report.tolerance = tolerance;
  report.points = space_points.size() * static_cast<std::size_t>(times);
  report.min_ratio = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i].ratio < report.min_ratio) {
      report.min_ratio = best[i].ratio;
      arg = i;
    }
  }
  if (!best.empty() && times > 0) {
    const auto& p = space_points[arg];
    const double h = d.params().space_spacing();
    report.argmin_x.resize(p.m.size());
    for (std::size_t c = 0; c < p.m.size(); ++c) {
      report.argmin_x[c] = h * static_cast<double>(p.m[c]) + p.u[c];
    }
    report.argmin_t = static_cast<double>(best[arg].k) * d.params().time_spacing();
  }
  report.passed = report.points > 0 && report.min_ratio >= interference_floor() - tolerance;
  return report;
}

double galilean_check(const Datum& d_theta, const Datum& d_plain, std::span<const double> x,
                      double t) {
  const auto& a = d_theta.params();
  const auto& b = d_plain.params();
  if (d_plain.modulated()) throw ContractError("galilean_check: plain datum is modulated");
  if (a.n != b.n || a.sigma != b.sigma || a.R != b.R || a.rho != b.rho ||
      a.quad_order != b.quad_order || d_theta.centers() != d_plain.centers()) {
    throw ContractError("galilean_check: data built from different parameters");
  }
  check_dim(d_plain, x);
  const double u_theta = std::abs(evaluate(d_theta, x, t));
  Vec moved(x.begin(), x.end());
  if (d_theta.theta()) {
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] -= t * (*d_theta.theta())[i];
  }
  const double u_plain = std::abs(evaluate(d_plain, moved, t));
  return std::abs(u_theta - u_plain);
}

std::vector<EvaluationRow> evaluate_batch(const Datum& d,
                                          std::span<const std::pair<Vec, double>> points) {
  const double root_measure = std::sqrt(d.omega_measure());
  std::vector<EvaluationRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    rows[i].x = points[i].first;
    rows[i].t = points[i].second;
    rows[i].value = evaluate(d, rows[i].x, rows[i].t);
    rows[i].ratio = std::abs(rows[i].value) / root_measure;
  });
  return rows;
}

std::string evaluation_csv_header(int n) {
  std::string h;
  for (int i = 1; i <= n; ++i) h += "x_" + std::to_string(i) + ",";
  return h + "t,re,im,modulus,ratio\n";
}

std::string evaluation_csv_row(const EvaluationRow& row) {
  std::string s;
  for (double c : row.x) s += format_double(c) + ",";
  s += format_double(row.t) + "," + format_double(row.value.real()) + "," +
       format_double(row.value.imag()) + "," + format_double(std::abs(row.value)) + "," +
       format_double(row.ratio) + "\n";
  return s;
}

}  // namespace smlab
