#include <benchmark/benchmark.h>

#include "smlab/certificate.hpp"
#include "smlab/datum.hpp"
#include "smlab/density.hpp"
#include "smlab/dirichlet.hpp"
#include "smlab/mollifier.hpp"
#include "smlab/propagator.hpp"

using namespace smlab;

namespace {

ExperimentParams at(double R) {
  ExperimentParams p;
  p.R = R;
  return p;
}

void BM_Evaluate(benchmark::State& state) {
  const Datum d = build_datum(at(static_cast<double>(state.range(0))));
  const Vec x = {0.1, -0.2, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(d, x, 0.37));
}
BENCHMARK(BM_Evaluate)->Arg(256)->Arg(1024)->Arg(4096);

void BM_TimeLattice(benchmark::State& state) {
  const auto p = at(static_cast<double>(state.range(0)));
  const Datum d = build_datum(p);
  const Vec x = {0.1, -0.2, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_time_lattice(d, x, p.time_count()));
}
BENCHMARK(BM_TimeLattice)->Arg(256)->Arg(1024);

void BM_Density(benchmark::State& state) {
  auto p = at(static_cast<double>(state.range(0)));
  const Vec theta = {0.48, 0.6, 0.64};
  for (auto _ : state) benchmark::DoNotOptimize(density_deficiency(theta, p, 1000, 1));
}
BENCHMARK(BM_Density)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_DirichletL1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_l1(state.range(0)));
}
BENCHMARK(BM_DirichletL1)->Arg(16)->Arg(1024)->Arg(16384);

void BM_Certificate(benchmark::State& state) {
  const auto p = at(256);
  const MollifierSpec m(3, p.eps);
  const std::vector<double> theta = {0.48, 0.6, 0.64};
  for (auto _ : state) benchmark::DoNotOptimize(certificate(theta, p, state.range(0), m));
}
BENCHMARK(BM_Certificate)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
