#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "smlab/lattice.hpp"
#include "smlab/params.hpp"

namespace smlab {

/// Quadrature rule on B(0, rho): tensor Gauss-Legendre nodes of the bounding
/// cube that fall in the closed ball, weights rescaled to sum to the exact
/// ball volume. Offsets are stored flat, `n` doubles per node.
struct BallRule {
  int n = 0;
  std::vector<double> offsets;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  const double* offset(std::size_t i) const { return offsets.data() + i * n; }
};

BallRule ball_rule(int n, double rho, int order);

/// Frequency-side description of the initial datum: the normalised indicator
/// of Omega = {R^{1-sigma} l : |l| < R^sigma} + B(0, rho), optionally
/// modulated by exp(i pi R theta.x), which is stored as the frequency shift
/// (R/2) theta.
///
/// Evaluation nodes are flattened (shift included) so hot loops read
/// contiguous memory. Immutable after construction.
class Datum {
 public:
  const ExperimentParams& params() const { return params_; }
  int dim() const { return params_.n; }

  const std::vector<IntVec>& centers() const { return centers_; }
  std::size_t center_count() const { return centers_.size(); }
  double rho() const { return params_.rho; }
  double normalization() const { return normalization_; }

  bool modulated() const { return theta_.has_value(); }
  const std::optional<Vec>& theta() const { return theta_; }
  /// (R/2) theta, or zeros.
  const Vec& modulation_shift() const { return shift_; }

  const BallRule& ball() const { return ball_; }
  double ball_volume() const { return ball_volume_; }
  /// |Omega| = (number of centres) * vol B(0, rho); exact under disjointness.
  double omega_measure() const { return ball_volume_ * static_cast<double>(centers_.size()); }

  std::size_t node_count() const { return node_w_.size(); }
  /// Shifted frequency of node j (n doubles).
  const double* node_xi(std::size_t j) const { return node_xi_.data() + j * dim(); }
  std::span<const double> node_norm_sq() const { return node_sq_; }
  std::span<const double> node_weights() const { return node_w_; }
  /// Centre index and ball-rule index of node j.
  std::size_t node_center(std::size_t j) const { return j / ball_.size(); }
  std::size_t node_in_ball(std::size_t j) const { return j % ball_.size(); }

  /// Copy with a different normalisation constant (the default is
  /// 1/sqrt|Omega|).
  Datum with_normalization(double value) const;

  friend Datum build_datum(const ExperimentParams&, std::optional<Vec>, bool, std::size_t);

 private:
  Datum() = default;

  ExperimentParams params_;
  std::vector<IntVec> centers_;
  std::optional<Vec> theta_;
  Vec shift_;
  BallRule ball_;
  double ball_volume_ = 0.0;
  double normalization_ = 0.0;
  std::vector<double> node_xi_;
  std::vector<double> node_sq_;
  std::vector<double> node_w_;
};

/// Builds f (theta empty) or f_theta. Throws ContractError if rho >=
/// R^{1-sigma}/2, since the balls would overlap and |Omega| would no longer
/// be (count) * vol B(0, rho), or if theta is not a unit vector in R^n.
Datum build_datum(const ExperimentParams& params, std::optional<Vec> theta = std::nullopt,
                  bool allow_large_rho_eps = false, std::size_t center_cap = kDefaultCenterCap);

/// sqrt(normalization^2 * sum of all node weights). Equals 1 up to rounding.
double l2_norm(const Datum& d);

/// sqrt(normalization^2 * sum_nodes w (1 + |xi|^2)^s), over the shifted
/// support. Uses the same node order as l2_norm so s = 0 agrees bit for bit.
double hs_norm(const Datum& d, double s);

/// Centres are written as integer labels together with the parameters and
/// theta; quadrature nodes are rebuilt on load.
nlohmann::json to_json(const Datum& d);
Datum datum_from_json(const nlohmann::json& doc, bool allow_large_rho_eps = false);

}  // namespace smlab
