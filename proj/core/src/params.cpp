#include "smlab/params.hpp"

#include <array>
#include <cmath>
#include <string>

#include "smlab/errors.hpp"

namespace smlab {

namespace {

constexpr std::array<std::string_view, 9> kKeys = {
    "n", "sigma", "R", "rho", "eps", "s_exponent", "quad_order", "seed", "sample_count"};

}  // namespace

double ExperimentParams::label_radius() const { return std::pow(R, sigma); }
double ExperimentParams::center_spacing() const { return std::pow(R, 1.0 - sigma); }
double ExperimentParams::space_spacing() const { return std::pow(R, sigma - 1.0); }
double ExperimentParams::time_spacing() const { return std::pow(R, 2.0 * sigma - 1.0); }

std::int64_t ExperimentParams::time_count() const {
  return count_positive_below(std::pow(R, 1.0 - 2.0 * sigma));
}

double snap_integer(double bound) {
  const double nearest = std::round(bound);
  if (std::abs(bound - nearest) <= 1e-12 * std::max(1.0, std::abs(bound))) return nearest;
  return bound;
}

std::int64_t count_positive_below(double bound) {
  const double b = snap_integer(bound);
  if (!(b > 1.0)) return 0;
  const double c = std::ceil(b);
  return static_cast<std::int64_t>(c) - 1;
}

void validate(const ExperimentParams& p, bool allow_large_rho_eps) {
  if (p.n < 3) {
    throw ContractError("n must be at least 3 (got " + std::to_string(p.n) + ")");
  }
  const double sigma_max = 1.0 / (p.n + 2);
  if (!(p.sigma > 0.0 && p.sigma < sigma_max)) {
    throw ContractError("sigma must lie in (0, 1/(n+2)) = (0, " + std::to_string(sigma_max) +
                        "), got " + std::to_string(p.sigma));
  }
  if (!(p.R > 1.0) || !std::isfinite(p.R)) {
    throw ContractError("R must be a finite real > 1");
  }
  if (!(p.rho > 0.0) || !(p.eps > 0.0)) {
    throw ContractError("rho and eps must be positive");
  }
  if (!allow_large_rho_eps && (p.rho > kDefaultSmallness || p.eps > kDefaultSmallness)) {
    throw ContractError(
        "rho and eps above 1/100 void the phase-window bounds; pass the override flag to "
        "allow them");
  }
  if (p.s_exponent < 0.0) throw ContractError("s_exponent must be >= 0");
  if (p.quad_order < 1) throw ContractError("quad_order must be >= 1");
  if (p.sample_count < 1) throw ContractError("sample_count must be >= 1");
}

std::span<const std::string_view> param_keys() { return kKeys; }

bool is_param_key(std::string_view key) {
  for (auto k : kKeys) {
    if (k == key) return true;
  }
  return false;
}

ExperimentParams params_from_json(const nlohmann::json& doc, bool allow_large_rho_eps) {
  if (!doc.is_object()) throw ContractError("parameter document must be a JSON object");
  ExperimentParams p;
  for (const auto& [key, value] : doc.items()) {
    if (!is_param_key(key)) throw ContractError("unknown parameter key '" + key + "'");
    try {
      if (key == "n") p.n = value.get<int>();
      else if (key == "sigma") p.sigma = value.get<double>();
      else if (key == "R") p.R = value.get<double>();
      else if (key == "rho") p.rho = value.get<double>();
      else if (key == "eps") p.eps = value.get<double>();
      else if (key == "s_exponent") p.s_exponent = value.get<double>();
      else if (key == "quad_order") p.quad_order = value.get<int>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else if (key == "sample_count") p.sample_count = value.get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ContractError("bad value for '" + key + "': " + e.what());
    }
  }
  validate(p, allow_large_rho_eps);
  return p;
}

nlohmann::json to_json(const ExperimentParams& p) {
  return {{"n", p.n},         {"sigma", p.sigma},
          {"R", p.R},         {"rho", p.rho},
          {"eps", p.eps},     {"s_exponent", p.s_exponent},
          {"quad_order", p.quad_order}, {"seed", p.seed},
          {"sample_count", p.sample_count}};
}

}  // namespace smlab
