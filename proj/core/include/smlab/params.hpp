#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

namespace smlab {

/// Scale parameters of the construction plus the numerical controls.
///
/// The construction lives at frequency scale `R`: frequency balls of radius
/// `rho` centred on the lattice R^{1-sigma} Z^n inside B(0, R), spatial
/// lattice R^{sigma-1} Z^n inside B(0, 2), and time lattice R^{2 sigma-1} Z
/// inside (0, 1).
struct ExperimentParams {
  int n = 3;
  double sigma = 0.15;
  double R = 256.0;
  double rho = 0.01;
  double eps = 0.01;
  double s_exponent = 0.5;
  int quad_order = 2;
  std::uint64_t seed = 1;
  std::int64_t sample_count = 1000;

  /// R^sigma: radius bound on the integer labels of the frequency centres.
  double label_radius() const;
  /// R^{1-sigma}: spacing of the frequency-centre lattice.
  double center_spacing() const;
  /// R^{sigma-1}: spacing of the spatial lattice.
  double space_spacing() const;
  /// R^{2 sigma-1}: spacing of the time lattice.
  double time_spacing() const;
  /// Number of integers k with 0 < k < R^{1-2 sigma}.
  std::int64_t time_count() const;
};

/// Largest rho/eps accepted without the explicit override.
inline constexpr double kDefaultSmallness = 0.01;

/// Throws ContractError when a field is out of range. rho and eps above
/// 1/100 are accepted only with `allow_large_rho_eps`.
void validate(const ExperimentParams& params, bool allow_large_rho_eps = false);

/// Strict loader: keys must be exactly the nine parameter names; unknown
/// keys throw ContractError. Missing keys keep their defaults.
ExperimentParams params_from_json(const nlohmann::json& doc, bool allow_large_rho_eps = false);
nlohmann::json to_json(const ExperimentParams& params);

/// The nine accepted parameter keys.
std::span<const std::string_view> param_keys();
bool is_param_key(std::string_view key);

/// Number of positive integers strictly below `bound`. A bound within
/// 1e-12 (relative) of an integer is snapped to it first, so that
/// pow(1024, 0.7) == 128 counts 127 values no matter how pow rounds.
std::int64_t count_positive_below(double bound);

/// `bound` snapped to the nearest integer when within 1e-12 relative.
double snap_integer(double bound);

}  // namespace smlab
