#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smlab {

enum class PackingConclusion { vanishes, borderline, survives };

std::string to_string(PackingConclusion c);

struct PackingRow {
  double R = 0.0;
  double point_count_bound = 0.0;          // #spatial lattice points * #lattice times
  double neighborhood_volume_bound = 0.0;  // point_count_bound * vol B(0, eps/R)
};

/// Volume heuristic for the eps/R-neighbourhood of the translated lattice
/// union: about R^{1-(n+2) sigma}, so it vanishes as R grows exactly when
/// sigma > 1/(n+2).
struct PackingReport {
  int n = 0;
  double sigma = 0.0;
  double eps = 0.0;
  double exponent = 0.0;  // 1 - (n+2) sigma
  std::vector<PackingRow> rows;
  double fitted_trend = 0.0;  // log-log slope of the volume bound over the rows
  PackingConclusion conclusion = PackingConclusion::borderline;
};

/// |exponent| below this is reported as borderline.
inline constexpr double kBorderlineTolerance = 1e-12;

/// Accepts any sigma in (0, 1): the point is to compare both sides of
/// 1/(n+2). Spatial count bound: lattice points of B(0, 2 R^{1-sigma}) are at
/// most vol B(0, 2 R^{1-sigma} + sqrt(n)/2).
PackingReport packing_check(int n, double sigma, std::span<const double> R_list,
                            double eps = 0.01);

std::string packing_csv(const PackingReport& report);
nlohmann::json to_json(const PackingReport& report);

}  // namespace smlab
