#ifndef TWOSAMPLE_POWER_HPP
#define TWOSAMPLE_POWER_HPP

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "twosample/classic_tests.hpp"
#include "twosample/dgp.hpp"
#include "twosample/resample.hpp"

namespace twosample {

// The ECDF statistics plus the parametric baselines the simulations compare
// against. The baselines use their standard reference distributions, not
// resampling.
enum class TestMethod { KS, Kuiper, CVM, AD, Wass, DTS, TTest, FTest };

inline const char* to_string(TestMethod m) {
  switch (m) {
    case TestMethod::KS: return "ks";
    case TestMethod::Kuiper: return "kuiper";
    case TestMethod::CVM: return "cvm";
    case TestMethod::AD: return "ad";
    case TestMethod::Wass: return "wass";
    case TestMethod::DTS: return "dts";
    case TestMethod::TTest: return "t";
    case TestMethod::FTest: return "f";
  }
  return "?";
}

inline std::optional<StatKind> as_stat_kind(TestMethod m) {
  switch (m) {
    case TestMethod::KS: return StatKind::KS;
    case TestMethod::Kuiper: return StatKind::Kuiper;
    case TestMethod::CVM: return StatKind::CVM;
    case TestMethod::AD: return StatKind::AD;
    case TestMethod::Wass: return StatKind::Wass;
    case TestMethod::DTS: return StatKind::DTS;
    default: return std::nullopt;
  }
}

inline constexpr TestMethod kEcdfMethods[6] = {
    TestMethod::KS,  TestMethod::Kuiper, TestMethod::CVM,
    TestMethod::AD,  TestMethod::Wass,   TestMethod::DTS};

struct PowerCell {
  double sweep_value = 0;
  TestMethod test = TestMethod::DTS;
  double rate = 0;
  double se = 0;  // binomial standard error
};

struct PowerCurve {
  std::string sweep_name;
  std::vector<PowerCell> cells;
  std::size_t n_sims = 0;
  double alpha = 0.05;

  double rate_at(double sweep_value, TestMethod test) const {
    for (const auto& c : cells)
      if (c.sweep_value == sweep_value && c.test == test) return c.rate;
    throw std::out_of_range("no such power cell");
  }
};

// Monte Carlo rejection rates over a grid of DGPs. Within one simulation all
// ECDF tests share one resampling pass; each test's marginal p-value is the
// same as a standalone run with that seed. Every simulation owns a derived
// RNG stream keyed by (grid index, sim index), so results are reproducible
// and independent of the worker split.
inline PowerCurve run_power_sweep(const std::vector<DgpSpec>& grid,
                                  const std::vector<double>& sweep_values,
                                  const std::vector<TestMethod>& tests,
                                  double alpha, std::size_t n_sims,
                                  const ResamplePlan& plan,
                                  std::string sweep_name = "sweep") {
  if (n_sims < 1) throw std::invalid_argument("n_sims must be >= 1");
  if (grid.size() != sweep_values.size())
    throw std::invalid_argument("grid and sweep_values differ in length");

  std::vector<StatKind> kinds;
  bool want_t = false, want_f = false;
  for (TestMethod m : tests) {
    if (auto k = as_stat_kind(m)) kinds.push_back(*k);
    else if (m == TestMethod::TTest) want_t = true;
    else want_f = true;
  }

  PowerCurve curve;
  curve.sweep_name = std::move(sweep_name);
  curve.n_sims = n_sims;
  curve.alpha = alpha;

  const unsigned workers = std::max(1u, plan.workers);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const DgpSpec& spec = grid[g];
    std::vector<std::vector<std::uint64_t>> rejects(
        workers, std::vector<std::uint64_t>(tests.size(), 0));

    auto run_sims = [&](std::size_t lo, std::size_t hi, unsigned worker) {
      ResamplePlan sim_plan = plan;
      sim_plan.workers = 1;  // parallelism lives at the simulation level here
      for (std::size_t s = lo; s < hi; ++s) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(s);
        Rng rng = Rng::stream(plan.seed, 2 * key);
        sim_plan.seed = Rng::stream(plan.seed, 2 * key + 1).next_u64();
        const auto [a, b] = draw_dgp(spec, rng);

        std::vector<double> pvals(tests.size(), 1.0);
        if (!kinds.empty()) {
          const auto results = two_sample_test_multi(a, b, kinds, sim_plan);
          std::size_t ki = 0;
          for (std::size_t t = 0; t < tests.size(); ++t)
            if (as_stat_kind(tests[t])) pvals[t] = results[ki++].p_value;
        }
        for (std::size_t t = 0; t < tests.size(); ++t) {
          if (tests[t] == TestMethod::TTest) pvals[t] = t_test(a, b);
          else if (tests[t] == TestMethod::FTest) pvals[t] = f_test(a, b);
        }
        for (std::size_t t = 0; t < tests.size(); ++t)
          if (pvals[t] <= alpha) ++rejects[worker][t];
      }
    };

    if (workers == 1 || n_sims < 2 * workers) {
      run_sims(0, n_sims, 0);
    } else {
      std::vector<std::thread> threads;
      const std::size_t chunk = (n_sims + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(lo + chunk, n_sims);
        if (lo >= hi) break;
        threads.emplace_back(run_sims, lo, hi, w);
      }
      for (auto& t : threads) t.join();
    }

    for (std::size_t t = 0; t < tests.size(); ++t) {
      std::uint64_t total = 0;
      for (unsigned w = 0; w < workers; ++w) total += rejects[w][t];
      const double rate = static_cast<double>(total) / static_cast<double>(n_sims);
      curve.cells.push_back(
          {sweep_values[g], tests[t], rate,
           std::sqrt(rate * (1.0 - rate) / static_cast<double>(n_sims))});
    }
  }
  return curve;
}

inline void write_power_csv(std::ostream& os, const PowerCurve& curve) {
  os << "sweep_value,test,rate,se,n_sims\n";
  for (const auto& c : curve.cells)
    os << c.sweep_value << ',' << to_string(c.test) << ',' << c.rate << ','
       << c.se << ',' << curve.n_sims << '\n';
}

}  // namespace twosample

#endif  // TWOSAMPLE_POWER_HPP
