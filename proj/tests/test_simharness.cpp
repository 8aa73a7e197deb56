#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "twosample/bench.hpp"
#include "twosample/classic_tests.hpp"
#include "twosample/dgp.hpp"
#include "twosample/power.hpp"
#include "twosample/svg.hpp"

using namespace twosample;

namespace {
Sample make(std::initializer_list<double> vals) { return Sample{vals}; }

std::pair<double, double> monte_carlo_moments(DgpFamily family, std::size_t n,
                                              std::uint64_t seed) {
  Rng rng(seed);
  const DgpSpec spec{family, 0.0, 1, 1};
  double mean = 0;
  std::vector<double> draws(n);
  for (auto& d : draws) {
    d = draw_dgp_b(spec, rng);
    mean += d;
  }
  mean /= static_cast<double>(n);
  double var = 0;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= static_cast<double>(n - 1);
  return {mean, var};
}
}  // namespace

TEST_CASE("mixture DGPs are standardized") {
  SUBCASE("mix-mean centered at 0") {
    const auto [mean, var] = monte_carlo_moments(DgpFamily::MixMean, 1000000, 1);
    CHECK(std::abs(mean) < 3e-3);
    CHECK(var == doctest::Approx(1.16).epsilon(0.01));  // component spread adds 0.16
  }
  SUBCASE("mix-var scaled to unit variance") {
    const auto [mean, var] = monte_carlo_moments(DgpFamily::MixVar, 1000000, 2);
    CHECK(std::abs(mean) < 3e-3);
    CHECK(std::abs(var - 1.0) < 6e-3);
  }
  SUBCASE("mix-both standardized") {
    // pre-scaling mixture variance from the mixture-variance formula
    const double pre = 0.2 * (4 + 0.8 * 0.8) + 0.8 * (1 + 0.2 * 0.2);
    CHECK(pre == doctest::Approx(1.76).epsilon(1e-12));
    const auto [mean, var] = monte_carlo_moments(DgpFamily::MixBoth, 1000000, 3);
    CHECK(std::abs(mean) < 4e-3);
    CHECK(var == doctest::Approx(1.76 / 1.7607).epsilon(0.01));
  }
}

TEST_CASE("draw_dgp shapes and errors") {
  Rng rng(4);
  const auto [a, b] = draw_dgp({DgpFamily::MeanShift, 1.0, 30, 40}, rng);
  CHECK(a.size() == 30);
  CHECK(b.size() == 40);
  CHECK_THROWS_AS(draw_dgp({DgpFamily::VarInflate, -1.0, 10, 10}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(draw_dgp({DgpFamily::Null, 0.0, 0, 10}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(dgp_family_from_string("cauchy"), std::invalid_argument);
  CHECK(dgp_family_from_string("mix-both") == DgpFamily::MixBoth);
}

TEST_CASE("t-test") {
  SUBCASE("identical samples") {
    CHECK(t_test(make({1, 2, 3}), make({1, 2, 3})) == doctest::Approx(1.0));
  }
  SUBCASE("degenerate input") {
    CHECK_THROWS_AS(t_test(make({1}), make({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(t_test(make({2, 2, 2}), make({3, 3, 3})),
                    std::domain_error);
    CHECK(t_test(make({2, 2, 2}), make({2, 2, 2})) == 1.0);
  }
  SUBCASE("calibration under equal means") {
    Rng rng(10);
    int rejections = 0;
    const int sims = 2000;
    for (int s = 0; s < sims; ++s) {
      Sample a, b;
      for (int i = 0; i < 50; ++i) a.values.push_back(rng.normal());
      for (int i = 0; i < 50; ++i) b.values.push_back(rng.normal());
      if (t_test(a, b) <= 0.05) ++rejections;
    }
    const double rate = rejections / 2000.0;
    CHECK(rate > 0.035);
    CHECK(rate < 0.065);
  }
  SUBCASE("power at unit shift, n = 50, is near 0.999") {
    Rng rng(11);
    int rejections = 0;
    const int sims = 2000;
    for (int s = 0; s < sims; ++s) {
      Sample a, b;
      for (int i = 0; i < 50; ++i) a.values.push_back(rng.normal());
      for (int i = 0; i < 50; ++i) b.values.push_back(rng.normal(1, 1));
      if (t_test(a, b) <= 0.05) ++rejections;
    }
    CHECK(rejections / 2000.0 > 0.99);
  }
}

TEST_CASE("f-test") {
  SUBCASE("identical samples") {
    CHECK(f_test(make({1, 2, 3}), make({1, 2, 3})) == doctest::Approx(1.0));
  }
  SUBCASE("zero variance") {
    CHECK_THROWS_AS(f_test(make({2, 2}), make({1, 3})), std::domain_error);
  }
  SUBCASE("calibration at ratio 1") {
    Rng rng(12);
    int rejections = 0;
    for (int s = 0; s < 2000; ++s) {
      Sample a, b;
      for (int i = 0; i < 30; ++i) a.values.push_back(rng.normal());
      for (int i = 0; i < 30; ++i) b.values.push_back(rng.normal());
      if (f_test(a, b) <= 0.05) ++rejections;
    }
    const double rate = rejections / 2000.0;
    CHECK(rate > 0.035);
    CHECK(rate < 0.065);
  }
  SUBCASE("high power at ratio 4") {
    Rng rng(13);
    int rejections = 0;
    for (int s = 0; s < 500; ++s) {
      Sample a, b;
      for (int i = 0; i < 50; ++i) a.values.push_back(rng.normal());
      for (int i = 0; i < 50; ++i) b.values.push_back(rng.normal(0, 2));
      if (f_test(a, b) <= 0.05) ++rejections;
    }
    CHECK(rejections / 500.0 > 0.9);
  }
}

TEST_CASE("run_power_sweep") {
  const ResamplePlan plan{200, 31};
  SUBCASE("null rejection near alpha") {
    const std::vector<DgpSpec> grid{{DgpFamily::Null, 0.0, 30, 30}};
    const auto curve = run_power_sweep(
        grid, {0.0},
        {TestMethod::DTS, TestMethod::Wass, TestMethod::TTest}, 0.05, 400,
        plan);
    for (const auto& c : curve.cells) {
      CHECK(c.rate > 0.015);
      CHECK(c.rate < 0.10);
      CHECK(c.se == doctest::Approx(std::sqrt(c.rate * (1 - c.rate) / 400)));
    }
  }
  SUBCASE("mean-shift at 0 equals the null point") {
    const auto null_curve = run_power_sweep({{DgpFamily::Null, 0.0, 25, 25}},
                                            {0.0}, {TestMethod::DTS}, 0.05,
                                            200, plan);
    const auto shift_curve = run_power_sweep(
        {{DgpFamily::MeanShift, 0.0, 25, 25}}, {0.0}, {TestMethod::DTS}, 0.05,
        200, plan);
    CHECK(null_curve.cells[0].rate == shift_curve.cells[0].rate);
  }
  SUBCASE("reruns reproduce exactly, independent of workers") {
    const std::vector<DgpSpec> grid{{DgpFamily::MeanShift, 0.8, 20, 20}};
    const std::vector<TestMethod> tests(kEcdfMethods, kEcdfMethods + 6);
    const auto c1 = run_power_sweep(grid, {0.8}, tests, 0.05, 100, plan);
    const auto c2 = run_power_sweep(grid, {0.8}, tests, 0.05, 100, plan);
    ResamplePlan threaded = plan;
    threaded.workers = 4;
    const auto c3 = run_power_sweep(grid, {0.8}, tests, 0.05, 100, threaded);
    for (std::size_t i = 0; i < c1.cells.size(); ++i) {
      CHECK(c1.cells[i].rate == c2.cells[i].rate);
      CHECK(c1.cells[i].rate == c3.cells[i].rate);
    }
  }
  SUBCASE("power grows with the shift") {
    const std::vector<DgpSpec> grid{{DgpFamily::MeanShift, 0.0, 30, 30},
                                    {DgpFamily::MeanShift, 1.5, 30, 30}};
    const auto curve = run_power_sweep(grid, {0.0, 1.5}, {TestMethod::DTS},
                                       0.05, 300, plan);
    CHECK(curve.rate_at(1.5, TestMethod::DTS) >
          curve.rate_at(0.0, TestMethod::DTS) + 0.3);
  }
  SUBCASE("mean-shift power is monotone and below the t baseline") {
    const std::vector<double> mus{0.0, 0.5, 1.0, 1.5};
    std::vector<DgpSpec> grid;
    for (double mu : mus) grid.push_back({DgpFamily::MeanShift, mu, 30, 30});
    const auto curve = run_power_sweep(
        grid, mus, {TestMethod::DTS, TestMethod::CVM, TestMethod::TTest}, 0.05,
        300, plan);
    for (TestMethod m : {TestMethod::DTS, TestMethod::CVM}) {
      for (std::size_t i = 1; i < mus.size(); ++i) {
        const double prev = curve.rate_at(mus[i - 1], m);
        const double next = curve.rate_at(mus[i], m);
        const double slack = 2 * std::sqrt(2 * 0.25 / 300);
        CHECK(next >= prev - slack);
      }
      for (double mu : mus)
        CHECK(curve.rate_at(mu, TestMethod::TTest) >=
              curve.rate_at(mu, m) - 2 * std::sqrt(2 * 0.25 / 300));
    }
  }
  SUBCASE("csv layout") {
    const auto curve = run_power_sweep({{DgpFamily::Null, 0.0, 10, 10}}, {0.0},
                                       {TestMethod::KS, TestMethod::TTest},
                                       0.05, 20, {50, 1});
    std::ostringstream os;
    write_power_csv(os, curve);
    const std::string text = os.str();
    CHECK(text.find("sweep_value,test,rate,se,n_sims") == 0);
    CHECK(text.find(",ks,") != std::string::npos);
    CHECK(text.find(",t,") != std::string::npos);
  }
}

TEST_CASE("svg rendering orders the legend by mean power") {
  PowerCurve curve;
  curve.sweep_name = "shift";
  curve.n_sims = 100;
  curve.cells = {{0, TestMethod::KS, 0.1, 0.01},  {0, TestMethod::DTS, 0.9, 0.01},
                 {1, TestMethod::KS, 0.2, 0.01},  {1, TestMethod::DTS, 0.95, 0.01}};
  std::ostringstream os;
  write_power_svg(os, curve);
  const std::string svg = os.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find(">dts<") < svg.find(">ks<"));
}

TEST_CASE("bench_runtime") {
  const ResamplePlan plan{20, 3};
  CHECK_THROWS_AS(bench_runtime({100}, plan, 0), std::invalid_argument);
  CHECK_THROWS_AS(bench_runtime({1}, plan, 1), std::invalid_argument);
  const auto rows = bench_runtime({100, 200}, plan, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 100);
  CHECK(rows[1].n == 200);
  for (const auto& r : rows) {
    CHECK(r.mean_seconds > 0);
    CHECK(r.lo95 <= r.mean_seconds);
    CHECK(r.hi95 >= r.mean_seconds);
  }
  std::ostringstream os;
  write_bench_csv(os, rows);
  CHECK(os.str().find("n,mean_seconds,lo95,hi95") == 0);
}
