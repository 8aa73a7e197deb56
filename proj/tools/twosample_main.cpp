// Command-line front end: run a two-sample test on data files, reproduce the
// power simulations, or benchmark the kernels. Results are emitted as JSON or
// CSV; power sweeps can also be rendered as a simple SVG line chart.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twosample/bench.hpp"
#include "twosample/io.hpp"
#include "twosample/power.hpp"
#include "twosample/resample.hpp"
#include "twosample/svg.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace twosample;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalidInput = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TWOSAMPLE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

StatKind stat_kind_from_string(const std::string& name) {
  for (StatKind k : kAllStatKinds)
    if (name == to_string(k)) return k;
  throw CLI::ValidationError("--method", "unknown method: " + name);
}

json result_to_json(const TestResult& r, ResampleMode mode) {
  return json{{"method", to_string(r.method)},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"n_resamples", r.n_resamples},
              {"exceed_count", r.exceed_count},
              {"seed", r.seed},
              {"mode", to_string(mode)}};
}

void print_results(const std::vector<TestResult>& results, ResampleMode mode,
                   const std::string& format) {
  if (format == "json") {
    if (results.size() == 1) {
      std::cout << result_to_json(results[0], mode).dump(2) << '\n';
    } else {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(result_to_json(r, mode));
      std::cout << arr.dump(2) << '\n';
    }
  } else {
    std::cout << "method,statistic,p_value,n_resamples,exceed_count,seed,mode\n";
    for (const auto& r : results) {
      std::ostringstream row;
      row.precision(6);
      row << to_string(r.method) << ',' << r.statistic << ',' << r.p_value
          << ',' << r.n_resamples << ',' << r.exceed_count << ',' << r.seed
          << ',' << to_string(mode);
      std::cout << row.str() << '\n';
    }
  }
}

Sample load_sample(const std::string& path, unsigned col,
                   const std::string& weights_path, const char* which) {
  Sample s{read_values(path, col)};
  if (!weights_path.empty()) {
    WeightedSample ws{s.values, read_values(weights_path, col), 0};
    s = expand_weights(ws);
  }
  validate_sample(s, which);
  return s;
}

struct SharedTestOptions {
  std::string method = "dts";
  std::uint64_t resamples = 2000;
  std::uint64_t seed = default_seed();
  std::string mode = "permutation";
  unsigned workers = 1;
  std::string format = "json";
  unsigned col = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "ks|kuiper|cvm|ad|wass|dts|all")
        ->default_val(method);
    cmd->add_option("--resamples", resamples, "number of resamples R")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "RNG seed (default: $TWOSAMPLE_SEED or 0)");
    cmd->add_option("--mode", mode, "permutation|bootstrap")
        ->check(CLI::IsMember({"permutation", "bootstrap"}));
    cmd->add_option("--workers", workers, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--col", col, "1-based CSV column to read from input files");
  }

  ResamplePlan plan() const {
    return {resamples, seed,
            mode == "bootstrap" ? ResampleMode::Bootstrap
                                : ResampleMode::Permutation,
            workers};
  }

  std::vector<StatKind> kinds() const {
    if (method == "all")
      return {kAllStatKinds, kAllStatKinds + 6};
    return {stat_kind_from_string(method)};
  }
};

std::vector<double> parse_grid(const std::string& text) {
  // LO:HI:STEP inclusive
  double lo, hi, step;
  char c1, c2;
  std::istringstream ss(text);
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
      step <= 0)
    throw CLI::ValidationError("--grid", "expected LO:HI:STEP with STEP > 0");
  std::vector<double> grid;
  for (double v = lo; v <= hi + step * 1e-9; v += step)
    grid.push_back(std::round(v * 1e9) / 1e9);
  return grid;
}

std::vector<std::size_t> parse_size_list(const std::string& text,
                                         const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const long long v = std::strtoll(tok.c_str(), nullptr, 10);
    if (v < 2) throw CLI::ValidationError(flag, "sizes must be >= 2");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

std::function<double(Rng&)> parse_reference(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  double p1 = 0, p2 = 1;
  if (colon != std::string::npos) {
    const std::string rest = text.substr(colon + 1);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--ref", "expected FAMILY:P1,P2");
    p1 = std::stod(rest.substr(0, comma));
    p2 = std::stod(rest.substr(comma + 1));
  }
  if (family == "normal") {
    if (p2 <= 0) throw CLI::ValidationError("--ref", "sigma must be positive");
    return [p1, p2](Rng& rng) { return rng.normal(p1, p2); };
  }
  if (family == "uniform") {
    if (p2 <= p1) throw CLI::ValidationError("--ref", "need LO < HI");
    return [p1, p2](Rng& rng) { return p1 + (p2 - p1) * rng.uniform01(); };
  }
  throw CLI::ValidationError("--ref", "unknown reference: " + family);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"ECDF-based two-sample hypothesis tests with resampling p-values"};
  app.require_subcommand(1);
  app.set_config("--config");

  // ---- test ----
  auto* test_cmd = app.add_subcommand("test", "test two data files");
  SharedTestOptions test_opt;
  std::string a_path, b_path, wa_path, wb_path;
  test_cmd->add_option("--a", a_path, "sample A file")->required();
  test_cmd->add_option("--b", b_path, "sample B file")->required();
  test_cmd->add_option("--weights-a", wa_path, "weights for sample A");
  test_cmd->add_option("--weights-b", wb_path, "weights for sample B");
  test_opt.attach(test_cmd);

  // ---- one-sample ----
  auto* one_cmd =
      app.add_subcommand("one-sample", "test a file against a known distribution");
  SharedTestOptions one_opt;
  std::string one_a_path, ref_text;
  std::uint64_t ref_k = 10;
  one_cmd->add_option("--a", one_a_path, "sample file")->required();
  one_cmd->add_option("--ref", ref_text, "normal:MU,SIGMA or uniform:LO,HI")
      ->required();
  one_cmd->add_option("--k", ref_k, "reference oversampling factor")
      ->check(CLI::PositiveNumber);
  one_opt.attach(one_cmd);

  // ---- power-sweep ----
  auto* sweep_cmd = app.add_subcommand("power-sweep", "Monte Carlo power study");
  std::string dgp_name, grid_text, n_grid_text, out_path, plot_path;
  std::string sweep_format = "csv";
  std::size_t sweep_n = 50, n_sims = 2000;
  double alpha = 0.05;
  std::uint64_t sweep_resamples = 2000, sweep_seed = default_seed();
  unsigned sweep_workers = 1;
  sweep_cmd->add_option("--dgp", dgp_name,
                        "null|mean-shift|var-inflate|mean-and-var|mix-mean|"
                        "mix-var|mix-both")
      ->required();
  sweep_cmd->add_option("--grid", grid_text, "parameter grid LO:HI:STEP");
  sweep_cmd->add_option("--n", sweep_n, "per-sample size")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-grid", n_grid_text, "comma list of per-sample sizes");
  sweep_cmd->add_option("--sims", n_sims, "simulations per grid point")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--alpha", alpha, "rejection threshold")
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--resamples", sweep_resamples, "resamples per test")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_seed, "master seed");
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", out_path, "output file (default stdout)");
  sweep_cmd->add_option("--plot", plot_path, "SVG output path");
  sweep_cmd->add_option("--format", sweep_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  // ---- bench ----
  auto* bench_cmd = app.add_subcommand("bench", "runtime scaling benchmark");
  std::string ns_text, bench_out;
  std::size_t reps = 5;
  std::uint64_t bench_resamples = 2000, bench_seed = default_seed();
  bench_cmd->add_option("--ns", ns_text, "comma list of pooled sizes")->required();
  bench_cmd->add_option("--reps", reps, "repetitions per size");
  bench_cmd->add_option("--resamples", bench_resamples, "resamples per run")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "seed");
  bench_cmd->add_option("--out", bench_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*test_cmd) {
    const Sample a = load_sample(a_path, test_opt.col, wa_path, "sample a");
    const Sample b = load_sample(b_path, test_opt.col, wb_path, "sample b");
    const auto kinds = test_opt.kinds();
    const auto results = two_sample_test_multi(a, b, kinds, test_opt.plan());
    print_results(results, test_opt.plan().mode, test_opt.format);
    return kExitOk;
  }

  if (*one_cmd) {
    const Sample a = load_sample(one_a_path, one_opt.col, "", "sample a");
    const auto sampler = parse_reference(ref_text);
    const auto kinds = one_opt.kinds();
    std::vector<TestResult> results;
    for (StatKind k : kinds)
      results.push_back(one_sample_test(a, sampler, ref_k, k, one_opt.plan()));
    print_results(results, one_opt.plan().mode, one_opt.format);
    return kExitOk;
  }

  if (*sweep_cmd) {
    const DgpFamily family = dgp_family_from_string(dgp_name);
    std::vector<DgpSpec> grid;
    std::vector<double> sweep_values;
    std::string sweep_name;

    const bool param_family =
        family == DgpFamily::MeanShift || family == DgpFamily::VarInflate;
    if (param_family && n_grid_text.empty()) {
      sweep_name = family == DgpFamily::MeanShift ? "mean shift" : "variance ratio";
      std::vector<double> params =
          !grid_text.empty() ? parse_grid(grid_text)
          : family == DgpFamily::MeanShift ? parse_grid("0:1.5:0.1")
                                           : parse_grid("1:6:0.5");
      for (double p : params) {
        grid.push_back({family, p, sweep_n, sweep_n});
        sweep_values.push_back(p);
      }
    } else {
      sweep_name = "per-sample n";
      std::vector<std::size_t> ns =
          !n_grid_text.empty()
              ? parse_size_list(n_grid_text, "--n-grid")
              : std::vector<std::size_t>{sweep_n};
      const double param = family == DgpFamily::MeanShift   ? 1.0
                           : family == DgpFamily::VarInflate ? 4.0
                                                             : 0.0;
      for (std::size_t n : ns) {
        grid.push_back({family, param, n, n});
        sweep_values.push_back(static_cast<double>(n));
      }
    }

    std::vector<TestMethod> tests(kEcdfMethods, kEcdfMethods + 6);
    if (family == DgpFamily::VarInflate) tests.push_back(TestMethod::FTest);
    else tests.push_back(TestMethod::TTest);

    const ResamplePlan plan{sweep_resamples, sweep_seed,
                            ResampleMode::Permutation, sweep_workers};
    const PowerCurve curve = run_power_sweep(grid, sweep_values, tests, alpha,
                                             n_sims, plan, sweep_name);

    std::ostringstream body;
    if (sweep_format == "csv") {
      write_power_csv(body, curve);
    } else {
      json j{{"sweep", curve.sweep_name},
             {"alpha", curve.alpha},
             {"n_sims", curve.n_sims},
             {"cells", json::array()}};
      for (const auto& c : curve.cells)
        j["cells"].push_back({{"sweep_value", c.sweep_value},
                              {"test", to_string(c.test)},
                              {"rate", c.rate},
                              {"se", c.se}});
      body << j.dump(2) << '\n';
    }
    write_output(out_path, body.str());
    if (!plot_path.empty()) {
      std::ofstream svg(plot_path);
      if (!svg) throw std::runtime_error("cannot write to " + plot_path);
      write_power_svg(svg, curve);
    }
    return kExitOk;
  }

  if (*bench_cmd) {
    const auto ns = parse_size_list(ns_text, "--ns");
    const ResamplePlan plan{bench_resamples, bench_seed,
                            ResampleMode::Permutation, 1};
    const auto rows = bench_runtime(ns, plan, reps);
    std::ostringstream body;
    write_bench_csv(body, rows);
    write_output(bench_out, body.str());
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const twosample::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
