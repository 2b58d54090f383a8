#include "smlab/datum.hpp"

#include <cmath>
#include <string>

#include "smlab/errors.hpp"
#include "smlab/parallel.hpp"
#include "smlab/quadrature.hpp"

namespace smlab {

BallRule ball_rule(int n, double rho, int order) {
  const GaussRule axis = gauss_legendre(order);
  BallRule rule;
  rule.n = n;
  // q = 2 in three dimensions puts every node exactly on the sphere, hence
  // the closed ball with a rounding allowance.
  const double limit = 1.0 + 1e-12;
  std::vector<int> idx(n, 0);
  for (;;) {
    double r2 = 0.0;
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      r2 += axis.nodes[idx[i]] * axis.nodes[idx[i]];
      w *= axis.weights[idx[i]];
    }
    if (r2 <= limit) {
      for (int i = 0; i < n; ++i) rule.offsets.push_back(rho * axis.nodes[idx[i]]);
      rule.weights.push_back(w);
    }
    int d = n - 1;
    while (d >= 0 && idx[d] == order - 1) {
      idx[d] = 0;
      --d;
    }
    if (d < 0) break;
    ++idx[d];
  }
  const double volume = unit_ball_volume(n) * std::pow(rho, n);
  const double total = pairwise_sum(rule.weights);
  for (auto& w : rule.weights) w *= volume / total;
  return rule;
}

Datum build_datum(const ExperimentParams& params, std::optional<Vec> theta,
                  bool allow_large_rho_eps, std::size_t center_cap) {
  validate(params, allow_large_rho_eps);
  const int n = params.n;
  const double spacing = params.center_spacing();
  if (!(params.rho < 0.5 * spacing)) {
    throw ContractError("rho = " + std::to_string(params.rho) +
                        " must be below R^{1-sigma}/2 = " + std::to_string(0.5 * spacing) +
                        ": overlapping balls make |Omega| != count * vol B(0, rho)");
  }
  if (theta) {
    if (theta->size() != static_cast<std::size_t>(n)) {
      throw ContractError("theta must have n = " + std::to_string(n) + " components");
    }
    double norm2 = 0.0;
    for (double c : *theta) norm2 += c * c;
    if (std::abs(norm2 - 1.0) > 1e-9) throw ContractError("theta must be a unit vector");
  }

  Datum d;
  d.params_ = params;
  d.centers_ = freq_centers(params, center_cap);
  d.theta_ = std::move(theta);
  d.shift_.assign(n, 0.0);
  if (d.theta_) {
    for (int i = 0; i < n; ++i) d.shift_[i] = 0.5 * params.R * (*d.theta_)[i];
  }
  d.ball_ = ball_rule(n, params.rho, params.quad_order);
  d.ball_volume_ = unit_ball_volume(n) * std::pow(params.rho, n);
  d.normalization_ = 1.0 / std::sqrt(d.omega_measure());

  const std::size_t per_ball = d.ball_.size();
  const std::size_t total = per_ball * d.centers_.size();
  d.node_xi_.resize(total * n);
  d.node_sq_.resize(total);
  d.node_w_.resize(total);
  std::size_t j = 0;
  for (const auto& l : d.centers_) {
    for (std::size_t b = 0; b < per_ball; ++b, ++j) {
      double sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double xi = spacing * static_cast<double>(l[i]) + d.ball_.offset(b)[i] + d.shift_[i];
        d.node_xi_[j * n + i] = xi;
        sq += xi * xi;
      }
      d.node_sq_[j] = sq;
      d.node_w_[j] = d.ball_.weights[b];
    }
  }
  return d;
}

Datum Datum::with_normalization(double value) const {
  Datum copy = *this;
  copy.normalization_ = value;
  return copy;
}

double l2_norm(const Datum& d) {
  const double mass = pairwise_sum(d.node_weights());
  return std::sqrt(d.normalization() * d.normalization() * mass);
}

double hs_norm(const Datum& d, double s) {
  if (s < 0.0) throw ContractError("hs_norm needs s >= 0");
  const auto w = d.node_weights();
  const auto sq = d.node_norm_sq();
  std::vector<double> terms(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) terms[j] = w[j] * std::pow(1.0 + sq[j], s);
  const double mass = pairwise_sum(terms);
  return std::sqrt(d.normalization() * d.normalization() * mass);
}

nlohmann::json to_json(const Datum& d) {
  nlohmann::json doc;
  doc["params"] = to_json(d.params());
  doc["centers"] = d.centers();
  doc["theta"] = d.theta() ? nlohmann::json(*d.theta()) : nlohmann::json(nullptr);
  doc["normalization"] = d.normalization();
  doc["omega_measure"] = d.omega_measure();
  return doc;
}

Datum datum_from_json(const nlohmann::json& doc, bool allow_large_rho_eps) {
  try {
    const auto params = params_from_json(doc.at("params"), allow_large_rho_eps);
    std::optional<Vec> theta;
    if (doc.contains("theta") && !doc.at("theta").is_null()) theta = doc.at("theta").get<Vec>();
    Datum d = build_datum(params, theta, allow_large_rho_eps);
    if (doc.contains("centers") && doc.at("centers").get<std::vector<IntVec>>() != d.centers()) {
      throw ContractError("stored centres do not match the parameters");
    }
    if (doc.contains("normalization")) {
      const double norm = doc.at("normalization").get<double>();
      if (norm != d.normalization()) d = d.with_normalization(norm);
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed datum document: ") + e.what());
  }
}

}  // namespace smlab
