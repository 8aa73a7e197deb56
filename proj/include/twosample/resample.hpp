#ifndef TWOSAMPLE_RESAMPLE_HPP
#define TWOSAMPLE_RESAMPLE_HPP

#include <cstring>
#include <functional>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "twosample/ecdf.hpp"
#include "twosample/rng.hpp"

namespace twosample {

enum class ResampleMode { Permutation, Bootstrap };

inline const char* to_string(ResampleMode m) {
  return m == ResampleMode::Permutation ? "permutation" : "bootstrap";
}

struct ResamplePlan {
  std::uint64_t n_resamples = 2000;
  std::uint64_t seed = 0;
  ResampleMode mode = ResampleMode::Permutation;
  unsigned workers = 1;
};

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  std::uint64_t n_resamples = 0;
  std::uint64_t exceed_count = 0;  // resampled statistics >= observed
  StatKind method = StatKind::DTS;
  std::uint64_t seed = 0;
};

// No resampled statistic reached the observed one: report 1/(2R), never 0.
inline double p_value_from_counts(std::uint64_t exceed,
                                  std::uint64_t n_resamples) {
  if (exceed == 0) return 1.0 / (2.0 * static_cast<double>(n_resamples));
  return static_cast<double>(exceed) / static_cast<double>(n_resamples);
}

namespace detail {

// Per-thread scratch for generating label counts on the shared grid.
struct ResampleScratch {
  std::vector<std::uint32_t> count_a, count_b;

  explicit ResampleScratch(std::size_t n) : count_a(n), count_b(n) {}

  // Uniform n_a-subset of [0, n) by Floyd's algorithm; the rest go to B.
  void permutation(std::uint32_t n_a, Rng& rng) {
    const std::size_t n = count_a.size();
    std::memset(count_a.data(), 0, n * sizeof(std::uint32_t));
    for (std::size_t i = n - n_a; i < n; ++i) {
      const auto t = static_cast<std::size_t>(rng.below(i + 1));
      if (count_a[t]) count_a[i] = 1;
      else count_a[t] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) count_b[i] = 1u - count_a[i];
  }

  // Two independent with-replacement draws from the pooled positions.
  void bootstrap(std::uint32_t n_a, std::uint32_t n_b, Rng& rng) {
    const std::size_t n = count_a.size();
    std::memset(count_a.data(), 0, n * sizeof(std::uint32_t));
    std::memset(count_b.data(), 0, n * sizeof(std::uint32_t));
    for (std::uint32_t i = 0; i < n_a; ++i) ++count_a[rng.below(n)];
    for (std::uint32_t i = 0; i < n_b; ++i) ++count_b[rng.below(n)];
  }

  void fill(ResampleMode mode, std::uint32_t n_a, std::uint32_t n_b,
            Rng& rng) {
    if (mode == ResampleMode::Permutation) permutation(n_a, rng);
    else bootstrap(n_a, n_b, rng);
  }
};

// Resample r of a run is driven by stream(seed, r) alone, so the result is
// independent of how resamples are split across workers.
template <typename PerResample>
void for_each_resample(const ResamplePlan& plan, std::size_t scratch_n,
                       std::uint32_t n_a, std::uint32_t n_b,
                       PerResample&& body) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(plan.workers,
                                      static_cast<unsigned>(plan.n_resamples)));
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, unsigned worker) {
    ResampleScratch scratch(scratch_n);
    for (std::uint64_t r = lo; r < hi; ++r) {
      Rng rng = Rng::stream(plan.seed, r);
      scratch.fill(plan.mode, n_a, n_b, rng);
      body(scratch, worker);
    }
  };
  if (workers == 1) {
    run_range(0, plan.n_resamples, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t chunk = (plan.n_resamples + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, plan.n_resamples);
    if (lo >= hi) break;
    threads.emplace_back(run_range, lo, hi, w);
  }
  for (auto& t : threads) t.join();
}

}  // namespace detail

// One draw of the resampling scheme, returned as two samples. The engine
// itself works with label counts; this is the sample-level view.
inline std::pair<Sample, Sample> resample_once(
    const std::vector<double>& joint, std::uint32_t n_a, std::uint32_t n_b,
    ResampleMode mode, Rng& rng) {
  if (joint.size() != static_cast<std::size_t>(n_a) + n_b)
    throw std::invalid_argument("n_a + n_b must equal the joint sample size");
  if (n_a == 0 || n_b == 0)
    throw std::invalid_argument("sample sizes must be positive");
  Sample a, b;
  a.values.reserve(n_a);
  b.values.reserve(n_b);
  if (mode == ResampleMode::Permutation) {
    detail::ResampleScratch scratch(joint.size());
    scratch.permutation(n_a, rng);
    for (std::size_t i = 0; i < joint.size(); ++i)
      (scratch.count_a[i] ? a : b).values.push_back(joint[i]);
  } else {
    for (std::uint32_t i = 0; i < n_a; ++i)
      a.values.push_back(joint[rng.below(joint.size())]);
    for (std::uint32_t i = 0; i < n_b; ++i)
      b.values.push_back(joint[rng.below(joint.size())]);
  }
  return {std::move(a), std::move(b)};
}

// Runs the resampling once and reads off the right-tail count for every
// requested statistic. All six share the same grid and the same resamples;
// each result equals what a standalone run with that seed would produce.
inline std::vector<TestResult> two_sample_test_multi(
    const Sample& a, const Sample& b, std::span<const StatKind> kinds,
    const ResamplePlan& plan) {
  if (plan.n_resamples == 0)
    throw std::invalid_argument("n_resamples must be >= 1");
  const MergedGrid grid = make_merged_grid(a, b);
  const StatSet observed = compute_observed_stats(grid);

  const unsigned workers = std::max(1u, plan.workers);
  std::vector<std::vector<std::uint64_t>> exceed(
      workers, std::vector<std::uint64_t>(kinds.size(), 0));
  detail::for_each_resample(
      plan, grid.size(), grid.n_a, grid.n_b,
      [&](detail::ResampleScratch& scratch, unsigned worker) {
        const StatSet s = compute_stats(grid, scratch.count_a, scratch.count_b);
        auto& counts = exceed[worker];
        for (std::size_t k = 0; k < kinds.size(); ++k)
          if (s.get(kinds[k]) >= observed.get(kinds[k])) ++counts[k];
      });

  std::vector<TestResult> results(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    std::uint64_t total = 0;
    for (unsigned w = 0; w < workers; ++w) total += exceed[w][k];
    results[k] = TestResult{observed.get(kinds[k]),
                            p_value_from_counts(total, plan.n_resamples),
                            plan.n_resamples, total, kinds[k], plan.seed};
  }
  return results;
}

inline TestResult two_sample_test(const Sample& a, const Sample& b,
                                  StatKind kind, const ResamplePlan& plan) {
  const StatKind kinds[1] = {kind};
  return two_sample_test_multi(a, b, kinds, plan)[0];
}

// Average of shard p-values, with the 1/(2R) floor stripped before and
// reapplied after so independent shards combine into the single-run value.
inline double combine_parallel_pvalues(const std::vector<TestResult>& shards) {
  if (shards.empty())
    throw std::invalid_argument("no shard results to combine");
  std::uint64_t total_exceed = 0, total_resamples = 0;
  for (const auto& s : shards) {
    if (s.n_resamples == 0)
      throw std::invalid_argument("shard with zero resamples");
    total_exceed += s.exceed_count;
    total_resamples += s.n_resamples;
  }
  // exceed/R weighting is the R-proportional weighted average of shard
  // p-values; with equal R it reduces to the plain mean.
  return p_value_from_counts(total_exceed, total_resamples);
}

struct WeightedSample {
  std::vector<double> values;
  std::vector<double> weights;
  std::uint64_t k = 0;  // replication integer found during expansion
};

// Finds the smallest k such that every k*weight is strictly within 0.1 of a
// positive integer, then replicates each value round(k*weight) times.
inline Sample expand_weights(WeightedSample& ws, std::uint64_t max_k = 10000) {
  if (ws.values.size() != ws.weights.size())
    throw std::invalid_argument("values and weights differ in length");
  if (ws.values.empty()) throw std::invalid_argument("empty weighted sample");
  for (double w : ws.weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("weights must be positive and finite");

  for (std::uint64_t k = 1; k <= max_k; ++k) {
    bool ok = true;
    for (double w : ws.weights) {
      const double scaled = static_cast<double>(k) * w;
      const double nearest = std::round(scaled);
      if (nearest < 1.0 || std::abs(scaled - nearest) >= 0.1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ws.k = k;
    Sample out;
    for (std::size_t i = 0; i < ws.values.size(); ++i) {
      const auto copies = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(k) * ws.weights[i]));
      out.values.insert(out.values.end(), copies, ws.values[i]);
    }
    return out;
  }
  throw std::runtime_error(
      "no replication factor k <= max_k makes all weights near-integer");
}

// Tests sample A against a known distribution by drawing an oversized
// reference sample B of size k * n_a and running the two-sample test.
inline TestResult one_sample_test(const Sample& a,
                                  const std::function<double(Rng&)>& reference,
                                  std::uint64_t k, StatKind kind,
                                  const ResamplePlan& plan) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  validate_sample(a, "sample a");
  Rng rng = Rng::stream(plan.seed, 0x9e3779b9u);
  Sample b;
  b.values.reserve(a.size() * k);
  for (std::size_t i = 0; i < a.size() * k; ++i)
    b.values.push_back(reference(rng));
  return two_sample_test(a, b, kind, plan);
}

// Deterministic accounting of the engine's per-run buffers, used to check
// that memory grows linearly with the pooled sample size.
inline std::size_t resampling_workspace_bytes(std::size_t n_a,
                                              std::size_t n_b) {
  const std::size_t n = n_a + n_b;
  std::size_t bytes = 0;
  bytes += n * sizeof(std::pair<double, std::uint32_t>);  // sort buffer
  bytes += n * (sizeof(double) + 2 * sizeof(std::uint32_t));  // grid values+labels
  bytes += n * (sizeof(std::uint32_t) + sizeof(double));  // groups (worst case)
  bytes += 2 * n * sizeof(std::uint32_t);                 // scratch counts
  return bytes;
}

}  // namespace twosample

#endif  // TWOSAMPLE_RESAMPLE_HPP
