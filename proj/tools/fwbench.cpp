// fwbench: benchmark runner for projection-free optimization with
// forward-mode gradient estimates. Subcommands:
//   run             execute a config's Monte Carlo experiment, write CSV
//   validate        parse and echo a config without running it
//   lmo-check       self-test the linear minimization oracles
//   estimator-stats empirical second-moment diagnostics of the estimator
//
// Exit codes: 0 success, 1 config error, 2 runtime numeric failure, 3 I/O.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "fw/estimator.hpp"
#include "fw/experiment.hpp"
#include "fw/problems/idx.hpp"
#include "fw/problems/quadratic.hpp"
#include "fw/sets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

int cmd_run(const std::string& config_path, const std::string& out_path, int jobs,
            bool instrumented, bool timings) {
  fw::ExperimentSpec spec = fw::parse_config_file(config_path);
  if (instrumented) spec.instrumented = true;

  // open before the (possibly long) experiment so a bad path fails fast
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fw::IoError("cannot open output path '" + out_path + "'");

  const fw::ExperimentResult result = fw::run_experiment(spec, jobs);

  fw::write_csv(result, out, timings);
  out.flush();
  if (!out) throw fw::IoError("failed writing '" + out_path + "'");

  std::cout << fw::summarize(result);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const fw::ExperimentSpec spec = fw::parse_config_file(config_path);
  std::cout << "ok: " << fw::describe_spec(spec) << "\n";
  return kExitOk;
}

// Compares each oracle's objective value against brute-force vertex
// enumeration (polytopes) or the closed form (l2 ball) on random inputs.
int cmd_lmo_check(int dimension, int trials, std::uint64_t seed) {
  fw::RandomSource rng(seed);
  const fw::Index n = dimension;
  bool ok = true;

  const auto check = [&](const fw::FeasibleSet& set, const std::vector<fw::Vector>& vertices,
                         const std::string& name) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      fw::Vector g(n);
      for (fw::Index i = 0; i < n; ++i) g[i] = rng.next_gaussian();
      const fw::Vector s = set.lmo(g);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : vertices) best = std::min(best, g.dot(v));
      worst = std::max(worst, std::abs(g.dot(s) - best));
      if (!set.contains(s)) {
        std::cout << "[FAIL] " << name << ": oracle output infeasible\n";
        ok = false;
        return;
      }
    }
    const bool pass = worst <= 1e-12;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": max |<lmo(g),g> - brute force| = "
              << worst << " over " << trials << " trials\n";
    ok = ok && pass;
  };

  const double r = 1.5;
  std::vector<fw::Vector> l1_vertices;
  for (fw::Index i = 0; i < n; ++i)
    for (double sgn : {1.0, -1.0}) {
      fw::Vector v = fw::Vector::Zero(n);
      v[i] = sgn * r;
      l1_vertices.push_back(v);
    }
  check(fw::L1Ball(n, r), l1_vertices, "l1 ball");

  std::vector<fw::Vector> simplex_vertices;
  for (fw::Index i = 0; i < n; ++i) {
    fw::Vector v = fw::Vector::Zero(n);
    v[i] = 1.0;
    simplex_vertices.push_back(v);
  }
  check(fw::Simplex(n), simplex_vertices, "simplex");

  fw::Vector lo(n), hi(n);
  for (fw::Index i = 0; i < n; ++i) {
    lo[i] = -1.0 - 0.1 * static_cast<double>(i);
    hi[i] = 0.5 + 0.2 * static_cast<double>(i);
  }
  std::vector<fw::Vector> box_vertices;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    fw::Vector v(n);
    for (fw::Index i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    box_vertices.push_back(v);
  }
  check(fw::Box(lo, hi), box_vertices, "box");

  {
    fw::L2Ball ball(n, r);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      fw::Vector g(n);
      for (fw::Index i = 0; i < n; ++i) g[i] = rng.next_gaussian();
      worst = std::max(worst, std::abs(g.dot(ball.lmo(g)) - (-r * g.norm())));
    }
    const bool pass = worst <= 1e-12;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "l2 ball: max |<lmo(g),g> + r||g||| = "
              << worst << " over " << trials << " trials\n";
    ok = ok && pass;
  }

  return ok ? kExitOk : kExitNumeric;
}

int cmd_estimator_stats(int dimension, long samples, const std::string& distribution,
                        std::uint64_t seed) {
  fw::DirectionKind kind;
  if (distribution == "gaussian")
    kind = fw::DirectionKind::gaussian;
  else if (distribution == "rademacher")
    kind = fw::DirectionKind::rademacher;
  else
    throw fw::ConfigError("unknown distribution '" + distribution +
                          "' (expected gaussian or rademacher)");

  const fw::Index n = dimension;
  const fw::Quadratic obj = fw::Quadratic::identity(n);
  fw::Vector x = fw::Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  fw::RandomSource rng(seed, kind);

  const double ratio = fw::second_moment_ratio(obj, x, rng, samples);
  const double expected = kind == fw::DirectionKind::gaussian
                              ? static_cast<double>(n) + 2.0
                              : static_cast<double>(n);
  std::cout << "n = " << n << ", samples = " << samples << ", distribution = " << distribution
            << "\n";
  std::cout << "empirical E||phi||^2 / ||grad f||^2 = " << ratio << "\n";
  std::cout << "population value = " << expected << ", bound (n + 4) = " << (n + 4) << "\n";
  return ratio <= static_cast<double>(n + 4) ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection-free optimization benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "experiment.csv";
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  bool instrumented = false;
  bool timings = false;

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment config, write aggregated CSV");
  run_cmd->add_option("config", config_path, "config file path")->required();
  run_cmd->add_option("--out", out_path, "output CSV path (default experiment.csv)");
  run_cmd->add_option("--jobs", jobs, "worker threads (default: hardware concurrency)");
  run_cmd->add_flag("--instrumented", instrumented,
                    "record exact-gradient diagnostics (gap, estimator error)");
  run_cmd->add_flag("--timings", timings,
                    "include mean_wall_time_us in the CSV (non-deterministic column)");

  CLI::App* validate_cmd = app.add_subcommand("validate", "parse a config and echo the spec");
  validate_cmd->add_option("config", config_path, "config file path")->required();

  int lmo_dim = 6;
  int lmo_trials = 1000;
  std::uint64_t lmo_seed = 12345;
  CLI::App* lmo_cmd = app.add_subcommand("lmo-check", "self-test the linear minimization oracles");
  lmo_cmd->add_option("--n", lmo_dim, "dimension (<= 20; brute force enumerates box vertices)")
      ->check(CLI::Range(1, 20));
  lmo_cmd->add_option("--trials", lmo_trials, "random inputs per set");
  lmo_cmd->add_option("--seed", lmo_seed, "rng seed");

  int est_dim = 10;
  long est_samples = 100000;
  std::string est_dist = "gaussian";
  std::uint64_t est_seed = 12345;
  CLI::App* est_cmd =
      app.add_subcommand("estimator-stats", "second-moment diagnostics of the estimator");
  est_cmd->add_option("--n", est_dim, "dimension")->check(CLI::PositiveNumber);
  est_cmd->add_option("--samples", est_samples, "Monte Carlo sample count");
  est_cmd->add_option("--distribution", est_dist, "gaussian | rademacher");
  est_cmd->add_option("--seed", est_seed, "rng seed");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed()) return cmd_run(config_path, out_path, jobs, instrumented, timings);
    if (validate_cmd->parsed()) return cmd_validate(config_path);
    if (lmo_cmd->parsed()) return cmd_lmo_check(lmo_dim, lmo_trials, lmo_seed);
    if (est_cmd->parsed()) return cmd_estimator_stats(est_dim, est_samples, est_dist, est_seed);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  } catch (const fw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fw::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fw::IdxError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fw::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
