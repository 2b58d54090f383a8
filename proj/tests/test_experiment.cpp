#include <doctest.h>

#include <cmath>
#include <random>

#include "smlab/datum.hpp"
#include "smlab/errors.hpp"
#include "smlab/maximal.hpp"
#include "smlab/packing.hpp"
#include "smlab/propagator.hpp"
#include "smlab/quadrature.hpp"
#include "smlab/sweep.hpp"

using namespace smlab;

namespace {

ExperimentParams at(double R, double sigma = 0.15) {
  ExperimentParams p;
  p.R = R;
  p.sigma = sigma;
  return p;
}

}  // namespace

TEST_CASE("ball samples") {
  const auto a = ball_samples(3, 500, 1);
  CHECK(a.size() == 500);
  for (const auto& x : a) CHECK(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < 1.0);
  CHECK(ball_samples(3, 500, 1) == a);
  CHECK(ball_samples(3, 500, 2) != a);
}

TEST_CASE("maximal_lower_bound: contracts and trivial bounds") {
  CHECK_THROWS_AS(maximal_lower_bound(at(std::nextafter(1.0, 2.0)), std::nullopt, 10, 1),
                  ContractError);
  const auto p = at(256);
  const Vec theta = {0.48, 0.6, 0.64};
  const auto est = maximal_lower_bound(p, theta, 400, 1);
  const double vol = unit_ball_volume(3);
  CHECK(est.samples == 400);
  CHECK(est.value > 0.0);
  CHECK(est.value <= std::sqrt(est.omega_measure * vol) * (1.0 + 1e-3));
  CHECK(est.coverage_fraction >= 0.0);
  CHECK(est.coverage_fraction <= 1.0);
  CHECK(est.coherent_fraction >= 0.0);
  CHECK(est.coherent_fraction <= 1.0);
  CHECK(est.std_error < 0.05 * est.value);

  // a zero theta means the unmodulated datum
  const auto zero = maximal_lower_bound(p, Vec{0.0, 0.0, 0.0}, 200, 1);
  const auto none = maximal_lower_bound(p, std::nullopt, 200, 1);
  CHECK(zero.value == none.value);
}

TEST_CASE("maximal_lower_bound scales like sqrt|Omega|") {
  // n = 3: halving rho divides |Omega| by 8
  auto p = at(256);
  const Vec theta = {0.48, 0.6, 0.64};
  const auto big = maximal_lower_bound(p, theta, 400, 3);
  p.rho = 0.005;
  const auto small = maximal_lower_bound(p, theta, 400, 3);
  CHECK(big.omega_measure / small.omega_measure == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(big.value / small.value == doctest::Approx(std::sqrt(8.0)).epsilon(0.05));
}

TEST_CASE("maximal estimate on Lambda reduces to the interference floor") {
  const auto p = at(256);
  const Datum d = build_datum(p);
  const auto lam = sample_lambda(p, 300, 5, true);
  std::vector<Vec> xs;
  for (const auto& q : lam) {
    Vec x(3);
    for (int c = 0; c < 3; ++c) x[c] = p.space_spacing() * static_cast<double>(q.m[c]) + q.u[c];
    xs.push_back(x);
  }
  const double region = 1.0;
  const auto est = maximal_estimate(d, xs, region);
  CHECK(est.coverage_fraction == 1.0);
  CHECK(est.coherent_fraction == 1.0);
  CHECK(est.value >= (interference_floor() - 0.01) * std::sqrt(d.omega_measure() * region));
}

TEST_CASE("maximal estimate is stable under ten times the samples") {
  const auto p = at(256);
  const Vec theta = {0.48, 0.6, 0.64};
  const auto a = maximal_lower_bound(p, theta, 300, 7);
  const auto b = maximal_lower_bound(p, theta, 3000, 7);
  const double se = std::hypot(a.std_error, b.std_error);
  CHECK(std::abs(a.value - b.value) <= 4.0 * se);
}

TEST_CASE("line fits") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 5, 7, 9};
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(leave_one_out_max_change(x, y) == doctest::Approx(0.0).epsilon(1e-12));
  const std::vector<double> bent = {3, 5, 7, 10};
  CHECK(leave_one_out_max_change(x, bent) > 0.0);
  const std::vector<double> one = {1};
  CHECK_THROWS_AS(fit_line(one, one), ContractError);
  const std::vector<double> same = {2, 2};
  CHECK_THROWS_AS(fit_line(same, same), ContractError);
}

TEST_CASE("r_sweep contracts") {
  auto p = at(256);
  p.sample_count = 50;
  const std::vector<double> single = {256};
  CHECK_THROWS_AS(r_sweep(p, single), ContractError);
  const std::vector<double> narrow = {256, 300, 400};
  CHECK_THROWS_AS(r_sweep(p, narrow), ContractError);
}

TEST_CASE("r_sweep on a small grid") {
  auto p = at(64);
  p.sample_count = 200;
  SweepOptions opt;
  opt.search_budget = 8;
  opt.density_samples = 256;
  const std::vector<double> Rs = {1024, 64, 256, std::nextafter(1.0, 2.0)};
  const auto rep = r_sweep(p, Rs, opt);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].R < rep.rows[1].R);
  CHECK_FALSE(rep.rows[0].ok);
  CHECK_FALSE(rep.rows[0].error.empty());
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(rep.rows[i].ok);
    CHECK(rep.rows[i].lhs_lower > 0.0);
    CHECK(rep.rows[i].lambda_coverage_fraction >= 0.0);
    CHECK(rep.rows[i].lambda_coverage_fraction <= 1.0);
    CHECK(rep.rows[i].hs_norm_value > 0.0);
  }
  CHECK(std::isfinite(rep.fitted_exponent));
  CHECK(rep.predicted == doctest::Approx(0.225));
  CHECK(rep.residual == doctest::Approx(rep.fitted_exponent - rep.predicted));

  auto half = p;
  half.sigma = 0.075;
  const auto rep2 = r_sweep(half, Rs, opt);
  CHECK(rep2.predicted == rep.predicted / 2.0);

  const auto csv = sweep_csv(rep);
  CHECK(csv.rfind("R,omega_measure,lambda_coverage_fraction,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const auto doc = to_json(rep);
  CHECK(doc.contains("fitted_exponent"));
  CHECK(doc["rows"][0].contains("error"));
  const auto dat = sweep_loglog(rep);
  CHECK(std::count(dat.begin(), dat.end(), '\n') == 4);
}

TEST_CASE("packing check") {
  const std::vector<double> Rs = {256, 1024, 4096, 16384};
  const auto border = packing_check(3, 0.2, Rs);
  CHECK(border.conclusion == PackingConclusion::borderline);
  CHECK(std::abs(border.exponent) <= kBorderlineTolerance);

  const auto vanish = packing_check(3, 0.25, Rs);
  CHECK(vanish.conclusion == PackingConclusion::vanishes);
  for (std::size_t i = 1; i < Rs.size(); ++i)
    CHECK(vanish.rows[i].neighborhood_volume_bound < vanish.rows[i - 1].neighborhood_volume_bound);
  CHECK(vanish.fitted_trend < 0.0);

  const auto survive = packing_check(3, 0.15, Rs);
  CHECK(survive.conclusion == PackingConclusion::survives);
  CHECK(survive.exponent == doctest::Approx(0.25));
  CHECK(survive.fitted_trend > 0.0);
  // the trend approaches the exponent from the volume formula
  CHECK(survive.fitted_trend == doctest::Approx(0.25).epsilon(0.5));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng);
    const double e = 1.0 - 5.0 * s;
    const auto c = packing_check(3, s, Rs).conclusion;
    const auto want = std::abs(e) <= kBorderlineTolerance ? PackingConclusion::borderline
                      : e < 0.0                          ? PackingConclusion::vanishes
                                                         : PackingConclusion::survives;
    mismatches += c != want;
  }
  CHECK(mismatches == 0);

  CHECK_THROWS_AS(packing_check(2, 0.1, Rs), ContractError);
  CHECK_THROWS_AS(packing_check(3, 0.0, Rs), ContractError);
  const std::vector<double> bad = {0.5};
  CHECK_THROWS_AS(packing_check(3, 0.1, bad), ContractError);
  CHECK(packing_csv(vanish).rfind("R,point_count_bound,neighborhood_volume_bound\n", 0) == 0);
  CHECK(to_json(vanish)["conclusion"] == "vanishes");
}
