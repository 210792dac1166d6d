#ifndef FW_EXPERIMENT_HPP
#define FW_EXPERIMENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fw/algorithm.hpp"
#include "fw/objective.hpp"
#include "fw/sets.hpp"
#include "fw/types.hpp"

namespace fw {

/// Invalid experiment configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Monte Carlo benchmark: R independent runs of each listed algorithm on
/// one problem, run r seeded with base_seed + r. Parsed from a flat
/// key = value config document.
struct ExperimentSpec {
  std::string problem;                      // quadratic | least_squares | logistic
  Index n = 0;                              // parameter dimension (quadratic/least_squares)
  std::optional<std::string> dataset_path;  // logistic only; synthetic data when absent
  std::vector<AlgorithmId> algorithms = {AlgorithmId::fgfw, AlgorithmId::afgfw};
  long iterations = 10000;
  std::optional<PowerSchedule> alpha;  // unset: 1/k for fgfw/afgfw, 2/(k+2) for fw
  PowerSchedule gamma = PowerSchedule::inverse_sqrt();
  long runs = 50;
  std::uint64_t base_seed = 1;
  std::optional<Vector> x0;  // unset: zero vector
  bool instrumented = false;

  PowerSchedule alpha_for(AlgorithmId a) const {
    if (alpha) return *alpha;
    return a == AlgorithmId::fw ? PowerSchedule::classical() : PowerSchedule::harmonic();
  }
};

/// Parses and fully validates a config document; defaults applied, every
/// violation reported with the offending key's name.
ExperimentSpec parse_config(const std::string& text);

/// Reads the file and parses it.
ExperimentSpec parse_config_file(const std::string& path);

/// One-line summary of the resolved spec (used by the validate subcommand).
std::string describe_spec(const ExperimentSpec& spec);

/// Problem instance bound to its feasible set, reference value stamped.
struct ProblemInstance {
  std::shared_ptr<const Objective> objective;
  std::shared_ptr<const FeasibleSet> set;
  Vector x0;
};

/// Materializes the spec's problem: builds objective, set and start point,
/// and computes the reference value f* by a long exact-gradient run when the
/// instance has no closed form.
ProblemInstance build_problem(const ExperimentSpec& spec);

/// Per-iteration aggregates over the Monte Carlo runs of one algorithm.
struct AggregateRow {
  long k = 0;
  double mean_suboptimality = 0.0;
  double std_suboptimality = 0.0;
  double mean_fw_gap = 0.0;
  double mean_estimator_error = 0.0;
  double mean_wall_time_us = 0.0;
  bool has_suboptimality = false;
  bool has_fw_gap = false;
  bool has_estimator_error = false;
};

struct AlgorithmCurve {
  AlgorithmId algorithm;
  std::vector<AggregateRow> rows;  // k = 1..K
  double final_f = 0.0;            // mean f at the last record
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::optional<double> f_star;
  std::vector<AlgorithmCurve> curves;  // in spec.algorithms order
};

/// Executes the experiment. Runs are independent and may execute on up to
/// `jobs` worker threads; aggregation is reduced in (algorithm, run) order
/// regardless of completion order, so the result is identical for any job
/// count.
ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs = 1);

/// Aggregates externally produced traces (exposed for tests; run order in
/// the input does not affect the result).
AlgorithmCurve aggregate_traces(AlgorithmId algorithm,
                                std::vector<std::pair<long, Trace>> indexed_traces);

/// Writes the result as CSV: '#' metadata comment lines, a header row, then
/// one row per (algorithm, iteration), LF line endings. The wall-time column
/// is opt-in because it is the one non-deterministic quantity.
void write_csv(const ExperimentResult& result, std::ostream& out, bool include_timings = false);
std::string csv_string(const ExperimentResult& result, bool include_timings = false);

/// Human-oriented end-of-run summary (final values per algorithm).
std::string summarize(const ExperimentResult& result);

}  // namespace fw

#endif  // FW_EXPERIMENT_HPP
