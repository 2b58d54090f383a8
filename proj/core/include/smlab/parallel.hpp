#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace smlab {

/// Worker threads used by parallel_for. Defaults to 1. Results never depend
/// on this value: every task writes its own slot and reductions run
/// afterwards in index order.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Calls body(i) for every i in [0, count), statically partitioned into
/// contiguous blocks. The first exception thrown is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation with a fixed split shape.
double pairwise_sum(std::span<const double> values);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

/// Per-task seed derived from a run seed and a task counter (splitmix64).
std::uint64_t task_seed(std::uint64_t seed, std::uint64_t task);

/// Small deterministic generator: splitmix64 stream, uniform doubles in [0, 1).
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();

 private:
  std::uint64_t state_;
};

}  // namespace smlab
