#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "smlab/errors.hpp"
#include "smlab/lattice.hpp"
#include "smlab/params.hpp"
#include "smlab/torus.hpp"

using namespace smlab;

namespace {

ExperimentParams base(double R = 256.0, double sigma = 0.15) {
  ExperimentParams p;
  p.R = R;
  p.sigma = sigma;
  return p;
}

}  // namespace

TEST_CASE("validate rejects out-of-range fields") {
  ExperimentParams p = base();
  CHECK_NOTHROW(validate(p));
  p.n = 2;
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.sigma = 0.2;  // 1/(n+2)
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.sigma = 0.0;
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.R = 1.0;
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.rho = 0.02;
  CHECK_THROWS_AS(validate(p), ContractError);
  CHECK_NOTHROW(validate(p, true));
  p = base();
  p.eps = 0.5;
  CHECK_THROWS_AS(validate(p), ContractError);
  CHECK_NOTHROW(validate(p, true));
  p = base();
  p.quad_order = 0;
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.sample_count = 0;
  CHECK_THROWS_AS(validate(p), ContractError);
  p = base();
  p.s_exponent = -0.5;
  CHECK_THROWS_AS(validate(p), ContractError);
}

TEST_CASE("params json loader is strict") {
  const auto doc = nlohmann::json::parse(R"({"n":4,"sigma":0.1,"R":1000,"seed":7})");
  const auto p = params_from_json(doc);
  CHECK(p.n == 4);
  CHECK(p.sigma == 0.1);
  CHECK(p.R == 1000.0);
  CHECK(p.seed == 7u);
  CHECK(p.rho == 0.01);

  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"n":3,"theta":[1,0,0]})")),
                  ContractError);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"sigma":"x"})")), ContractError);
  CHECK(param_keys().size() == 9);

  const auto round = params_from_json(to_json(p));
  CHECK(round.n == p.n);
  CHECK(round.sigma == p.sigma);
  CHECK(round.R == p.R);
  CHECK(round.seed == p.seed);
}

TEST_CASE("freq_centers: R^sigma = 1 gives only the origin") {
  // the smallest double above 1 is a valid R whose powers round to 1
  const auto p = base(std::nextafter(1.0, 2.0));
  REQUIRE(p.label_radius() == 1.0);
  const auto c = freq_centers(p);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == IntVec{0, 0, 0});
}

TEST_CASE("freq_centers: count 57 at n=3, sigma=0.15, R=256") {
  const auto p = base();
  const auto c = freq_centers(p);
  CHECK(c.size() == 57);
  CHECK(c == oracle::box_scan(3, p.label_radius()));
  for (const auto& l : c) {
    double s = 0.0;
    for (auto v : l) s += static_cast<double>(v * v);
    CHECK(p.center_spacing() * std::sqrt(s) < p.R);
  }
}

TEST_CASE("freq_centers matches the box scan for R^sigma <= 6") {
  for (double R : {2.0, 16.0, 100.0, 256.0, 1000.0, 4096.0, 30000.0, 1e5}) {
    for (double sigma : {0.05, 0.1, 0.15, 0.19}) {
      auto p = base(R, sigma);
      if (p.label_radius() > 6.0) continue;
      CAPTURE(R);
      CAPTURE(sigma);
      CHECK(freq_centers(p) == oracle::box_scan(3, p.label_radius()));
    }
  }
  ExperimentParams p4 = base(5000.0, 0.15);
  p4.n = 4;
  p4.sigma = 0.15;
  CHECK(freq_centers(p4) == oracle::box_scan(4, p4.label_radius()));
}

TEST_CASE("freq_centers count scales like R^{n sigma}") {
  // log(count)/log R carries log(4 pi/3)/log R as well, so the rate is
  // read off as the log-log slope between successive R.
  const double Rs[] = {256.0, 1024.0, 4096.0};
  double prev = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double lc = std::log(static_cast<double>(freq_centers(base(Rs[i])).size()));
    if (i) {
      const double slope = (lc - prev) / std::log(4.0);
      CAPTURE(Rs[i]);
      CHECK(slope == doctest::Approx(3 * 0.15).epsilon(0.15));
    }
    prev = lc;
  }
  const double overall =
      std::log(179.0 / 57.0) / std::log(16.0);
  CHECK(freq_centers(base(4096.0)).size() == 179);
  CHECK(overall == doctest::Approx(0.45).epsilon(0.15));
}

TEST_CASE("freq_centers honours the cap") {
  auto p = base(1e12, 0.19);
  CHECK_THROWS_AS(freq_centers(p, 1000), ResourceError);
  try {
    freq_centers(p, 1000);
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

TEST_CASE("time_lattice") {
  const auto p = base();
  const auto t = time_lattice(p);
  CHECK(t.size() == 48);
  CHECK(oracle::count_below(std::pow(256.0L, 0.7L)) == 48);
  const double dt = std::pow(256.0, -0.7);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(t[k] == static_cast<double>(k + 1) * p.time_spacing());
    CHECK(t[k] > 0.0);
    CHECK(t[k] < 1.0);
    if (k) CHECK(t[k] > t[k - 1]);
  }
  CHECK(p.time_spacing() == doctest::Approx(dt).epsilon(1e-15));
  // bit-for-bit reproducible from the parameters
  CHECK(time_lattice(base()) == t);

  CHECK(time_lattice(base(std::nextafter(1.0, 2.0))).empty());
  CHECK(time_lattice(base(1.5)).size() == 1);

  // 1024^0.7 = 128 exactly: k = 128 is excluded.
  CHECK(base(1024.0).time_count() == 127);
  CHECK(base(4096.0).time_count() == oracle::count_below(std::pow(4096.0L, 0.7L)));
}

TEST_CASE("build_lattice_family bundles the three lattices") {
  const auto p = base();
  const auto f = build_lattice_family(p);
  CHECK(f.freq_centers.size() == 57);
  CHECK(f.time_points.size() == 48);
  CHECK(f.space_spacing == p.space_spacing());
  CHECK(f.space_radius == 2.0);
}

TEST_CASE("torus distance") {
  const TorusPoint a({0.9, 0.0, 0.0});
  const TorusPoint b({0.1, 0.0, 0.0});
  CHECK(torus_distance(a, b) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(torus_distance(a, a) == 0.0);

  const TorusPoint w({1.25, -0.5, 3.0});
  CHECK(w.coords()[0] == doctest::Approx(0.25));
  CHECK(w.coords()[1] == doctest::Approx(0.5));
  CHECK(w.coords()[2] == 0.0);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> x(3), y(3), z(3);
    for (int c = 0; c < 3; ++c) {
      x[c] = u(rng);
      y[c] = u(rng);
      z[c] = u(rng);
    }
    const TorusPoint X(x), Y(y), Z(z);
    const double dxy = torus_distance(X, Y);
    CHECK(dxy == doctest::Approx(oracle::torus_distance_shifts(x, y)).epsilon(1e-12));
    CHECK(dxy == doctest::Approx(torus_distance(Y, X)).epsilon(1e-15));
    CHECK(dxy <= std::sqrt(3.0) / 2.0 + 1e-15);
    double euclid = 0.0;
    for (int c = 0; c < 3; ++c) euclid += (x[c] - y[c]) * (x[c] - y[c]);
    CHECK(dxy <= std::sqrt(euclid) + 1e-15);
    CHECK(dxy <= torus_distance(X, Z) + torus_distance(Z, Y) + 1e-14);
  }
}

TEST_CASE("space_lattice_sampler") {
  const auto p = base();
  const auto one = space_lattice_sampler(p, 1, 3);
  REQUIRE(one.size() == 1);
  const auto pts = space_lattice_sampler(p, 5000, 11);
  CHECK(pts.size() == 5000);
  const double h = p.space_spacing();
  const double m_bound = 2.0 * std::pow(256.0, 0.85);
  for (const auto& s : pts) {
    double x2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      CHECK(s.x[c] == static_cast<double>(s.m[c]) * h);
      x2 += s.x[c] * s.x[c];
    }
    CHECK(std::sqrt(x2) < 2.0);
    CHECK(std::sqrt(static_cast<double>(norm_sq(s.m))) < m_bound);
  }
  const auto again = space_lattice_sampler(p, 5000, 11);
  bool same = true;
  for (std::size_t i = 0; i < pts.size(); ++i) same = same && pts[i].m == again[i].m;
  CHECK(same);
  const auto other = space_lattice_sampler(p, 5000, 12);
  bool differs = false;
  for (std::size_t i = 0; i < pts.size(); ++i) differs = differs || pts[i].m != other[i].m;
  CHECK(differs);
}

TEST_CASE("count_positive_below snapping") {
  CHECK(count_positive_below(1.0) == 0);
  CHECK(count_positive_below(0.5) == 0);
  CHECK(count_positive_below(2.0) == 1);
  CHECK(count_positive_below(2.0000001) == 2);
  CHECK(count_positive_below(127.99999999999997) == 127);
  CHECK(count_positive_below(48.5) == 48);
}
