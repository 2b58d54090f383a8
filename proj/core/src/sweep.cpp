#include "smlab/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "smlab/datum.hpp"
#include "smlab/density.hpp"
#include "smlab/errors.hpp"
#include "smlab/format.hpp"
#include "smlab/maximal.hpp"

namespace smlab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractError("fit needs at least two points");
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ContractError("fit needs two distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double leave_one_out_max_change(std::span<const double> x, std::span<const double> y) {
  const double full = fit_line(x, y).slope;
  double worst = 0.0;
  for (std::size_t drop = 0; drop < x.size(); ++drop) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i == drop) continue;
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
    worst = std::max(worst, std::abs(fit_line(xs, ys).slope - full));
  }
  return worst;
}

ScalingReport r_sweep(const ExperimentParams& base, std::span<const double> R_list,
                      const SweepOptions& options) {
  std::vector<double> Rs(R_list.begin(), R_list.end());
  std::sort(Rs.begin(), Rs.end());
  Rs.erase(std::unique(Rs.begin(), Rs.end()), Rs.end());
  if (Rs.size() < 3) throw ContractError("r_sweep needs at least three distinct values of R");
  if (Rs.back() < 4.0 * Rs.front()) throw ContractError("R_list must span at least two octaves");

  ScalingReport rep;
  rep.n = base.n;
  rep.sigma = base.sigma;
  rep.s_exponent = base.s_exponent;
  rep.predicted = base.n * base.sigma / 2.0;

  std::vector<double> log_r, log_lhs;
  for (double R : Rs) {
    ScalingRow row;
    row.R = R;
    try {
      ExperimentParams p = base;
      p.R = R;
      validate(p, options.allow_large_rho_eps);
      ExperimentParams search = p;
      search.sample_count = static_cast<std::int64_t>(options.density_samples);
      const auto witness = search_theta(search, options.search_budget, p.seed);
      row.theta = witness.theta;
      row.theta_deficiency = witness.worst_deficiency;
      const auto est = maximal_lower_bound(p, row.theta, static_cast<std::size_t>(p.sample_count),
                                           p.seed, options.allow_large_rho_eps);
      row.omega_measure = est.omega_measure;
      row.lambda_coverage_fraction = est.coverage_fraction;
      row.coherent_fraction = est.coherent_fraction;
      row.lhs_lower = est.value;
      row.lhs_std_error = est.std_error;
      row.hs_norm_value =
          hs_norm(build_datum(p, row.theta, options.allow_large_rho_eps), p.s_exponent);
      if (!(row.lhs_lower > 0.0)) throw ContractError("maximal estimate is zero");
      log_r.push_back(std::log(R));
      log_lhs.push_back(std::log(row.lhs_lower));
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  if (log_r.size() < 2) throw ContractError("fewer than two sweep rows succeeded; cannot fit");
  const auto fit = fit_line(log_r, log_lhs);
  rep.fitted_exponent = fit.slope;
  rep.intercept = fit.intercept;
  rep.residual = rep.fitted_exponent - rep.predicted;
  rep.loo_max_change = log_r.size() >= 3 ? leave_one_out_max_change(log_r, log_lhs) : 0.0;
  return rep;
}

std::string sweep_csv(const ScalingReport& rep) {
  std::string out =
      "R,omega_measure,lambda_coverage_fraction,coherent_fraction,lhs_lower,lhs_std_error,"
      "hs_norm_value,theta_deficiency,ok\n";
  for (const auto& r : rep.rows) {
    out += format_double(r.R) + "," + format_double(r.omega_measure) + "," +
           format_double(r.lambda_coverage_fraction) + "," + format_double(r.coherent_fraction) +
           "," + format_double(r.lhs_lower) + "," + format_double(r.lhs_std_error) + "," +
           format_double(r.hs_norm_value) + "," + format_double(r.theta_deficiency) + "," +
           (r.ok ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::json to_json(const ScalingReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json row = {{"R", r.R},
                          {"omega_measure", r.omega_measure},
                          {"lambda_coverage_fraction", r.lambda_coverage_fraction},
                          {"coherent_fraction", r.coherent_fraction},
                          {"lhs_lower", r.lhs_lower},
                          {"lhs_std_error", r.lhs_std_error},
                          {"hs_norm_value", r.hs_norm_value},
                          {"theta", r.theta},
                          {"theta_deficiency", r.theta_deficiency},
                          {"ok", r.ok}};
    if (!r.ok) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return {{"n", rep.n},
          {"sigma", rep.sigma},
          {"s_exponent", rep.s_exponent},
          {"rows", rows},
          {"fitted_exponent", rep.fitted_exponent},
          {"intercept", rep.intercept},
          {"predicted", rep.predicted},
          {"residual", rep.residual},
          {"loo_max_change", rep.loo_max_change}};
}

std::string sweep_loglog(const ScalingReport& rep) {
  std::string out = "# log_R log_lhs_lower\n";
  for (const auto& r : rep.rows) {
    if (!r.ok) continue;
    out += format_double(std::log(r.R)) + " " + format_double(std::log(r.lhs_lower)) + "\n";
  }
  return out;
}

}  // namespace smlab
