#include "smlab/packing.hpp"

#include <cmath>

#include "smlab/errors.hpp"
#include "smlab/format.hpp"
#include "smlab/params.hpp"
#include "smlab/quadrature.hpp"
#include "smlab/sweep.hpp"

namespace smlab {

std::string to_string(PackingConclusion c) {
  switch (c) {
    case PackingConclusion::vanishes:
      return "vanishes";
    case PackingConclusion::borderline:
      return "borderline";
    case PackingConclusion::survives:
      return "survives";
  }
  return "unknown";
}

PackingReport packing_check(int n, double sigma, std::span<const double> R_list, double eps) {
  if (n < 3) throw ContractError("packing_check needs n >= 3");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ContractError("packing_check needs sigma in (0, 1)");
  if (!(eps > 0.0)) throw ContractError("packing_check needs eps > 0");

  PackingReport rep;
  rep.n = n;
  rep.sigma = sigma;
  rep.eps = eps;
  rep.exponent = 1.0 - (n + 2) * sigma;
  if (std::abs(rep.exponent) < kBorderlineTolerance) {
    rep.conclusion = PackingConclusion::borderline;
  } else {
    rep.conclusion = rep.exponent < 0.0 ? PackingConclusion::vanishes : PackingConclusion::survives;
  }

  const double ball = unit_ball_volume(n);
  const double half_diag = 0.5 * std::sqrt(static_cast<double>(n));
  std::vector<double> log_r, log_v;
  for (double R : R_list) {
    if (!(R > 1.0)) throw ContractError("packing_check needs every R > 1");
    PackingRow row;
    row.R = R;
    const double space = ball * std::pow(2.0 * std::pow(R, 1.0 - sigma) + half_diag, n);
    const double times = static_cast<double>(count_positive_below(std::pow(R, 1.0 - 2.0 * sigma)));
    row.point_count_bound = space * times;
    row.neighborhood_volume_bound = row.point_count_bound * ball * std::pow(eps / R, n);
    if (row.neighborhood_volume_bound > 0.0) {
      log_r.push_back(std::log(R));
      log_v.push_back(std::log(row.neighborhood_volume_bound));
    }
    rep.rows.push_back(row);
  }
  bool distinct = false;
  for (std::size_t i = 1; i < log_r.size(); ++i) distinct = distinct || log_r[i] != log_r[0];
  if (distinct) rep.fitted_trend = fit_line(log_r, log_v).slope;
  return rep;
}

std::string packing_csv(const PackingReport& rep) {
  std::string out = "R,point_count_bound,neighborhood_volume_bound\n";
  for (const auto& r : rep.rows) {
    out += format_double(r.R) + "," + format_double(r.point_count_bound) + "," +
           format_double(r.neighborhood_volume_bound) + "\n";
  }
  return out;
}

nlohmann::json to_json(const PackingReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"R", r.R},
                    {"point_count_bound", r.point_count_bound},
                    {"neighborhood_volume_bound", r.neighborhood_volume_bound}});
  }
  return {{"n", rep.n},
          {"sigma", rep.sigma},
          {"eps", rep.eps},
          {"exponent", rep.exponent},
          {"fitted_trend", rep.fitted_trend},
          {"conclusion", to_string(rep.conclusion)},
          {"rows", rows}};
}

}  // namespace smlab
