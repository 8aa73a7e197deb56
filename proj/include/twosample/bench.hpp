#ifndef TWOSAMPLE_BENCH_HPP
#define TWOSAMPLE_BENCH_HPP

#include <chrono>
#include <cmath>
#include <ostream>
#include <vector>

#include "twosample/resample.hpp"

namespace twosample {

struct BenchRow {
  std::size_t n = 0;  // pooled sample size, n_a = n_b = n/2
  double mean_seconds = 0;
  double lo95 = 0, hi95 = 0;
};

namespace detail {
inline double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
}  // namespace detail

// Wall-clock time of the full DTS test (sort + R resampled statistics) at
// each pooled size n. The band is mean +/- 1.96 sd over reps runs.
inline std::vector<BenchRow> bench_runtime(const std::vector<std::size_t>& n_grid,
                                           const ResamplePlan& plan,
                                           std::size_t reps = 5) {
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  std::vector<BenchRow> rows;
  for (std::size_t n : n_grid) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    const std::size_t half = n / 2;
    Rng rng = Rng::stream(plan.seed, n);
    Sample a, b;
    for (std::size_t i = 0; i < half; ++i) a.values.push_back(rng.normal());
    for (std::size_t i = 0; i < n - half; ++i) b.values.push_back(rng.normal());

    std::vector<double> times;
    times.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const double t0 = detail::now_seconds();
      volatile double sink =
          two_sample_test(a, b, StatKind::DTS, plan).statistic;
      (void)sink;
      times.push_back(detail::now_seconds() - t0);
    }
    double mean = 0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(reps);
    double var = 0;
    for (double t : times) var += (t - mean) * (t - mean);
    var = reps > 1 ? var / static_cast<double>(reps - 1) : 0.0;
    const double half_width = 1.96 * std::sqrt(var);
    rows.push_back({n, mean, mean - half_width, mean + half_width});
  }
  return rows;
}

// Time for `iters` evaluations of the statistic kernel alone (sort + one
// pass) at pooled size n. Used by the complexity check.
inline double time_stat_kernel(std::size_t n, std::size_t iters,
                               std::uint64_t seed = 7) {
  Rng rng = Rng::stream(seed, n);
  Sample a, b;
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) a.values.push_back(rng.normal());
  for (std::size_t i = 0; i < n - half; ++i) b.values.push_back(rng.normal());
  const double t0 = detail::now_seconds();
  double sink = 0;
  for (std::size_t i = 0; i < iters; ++i) {
    a.values[i % half] = rng.normal();  // perturb so the sort is not cached
    sink += dts_stat(a, b);
  }
  const double elapsed = detail::now_seconds() - t0;
  volatile double keep = sink;
  (void)keep;
  return elapsed / static_cast<double>(iters);
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "n,mean_seconds,lo95,hi95\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.mean_seconds << ',' << r.lo95 << ',' << r.hi95
       << '\n';
}

}  // namespace twosample

#endif  // TWOSAMPLE_BENCH_HPP
