#ifndef FW_TRACE_HPP
#define FW_TRACE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fw/types.hpp"

namespace fw {

/// Diagnostics of one iteration. Record k describes the iterate x_k the
/// iteration started from (the point the estimator was sampled at), so
/// f_value, suboptimality, fw_gap and estimator_error all refer to the same
/// point. suboptimality is present only when the objective carries a
/// reference value; fw_gap and estimator_error only where the run computes
/// them (instrumented mode for the stochastic algorithms).
struct TraceRecord {
  long k = 0;
  double f_value = 0.0;
  std::optional<double> suboptimality;
  std::optional<double> fw_gap;
  std::optional<double> estimator_error;  // ||v_k - grad f(x_k)||^2
  double wall_time_us = 0.0;
};

struct TraceMeta {
  std::string algorithm;
  std::string problem;
  std::string set;
  std::uint64_t seed = 0;
  std::string alpha;
  std::string gamma;  // empty when the algorithm has no averaging schedule
  long iterations = 0;
  bool instrumented = false;
};

struct Trace {
  TraceMeta meta;
  std::vector<TraceRecord> records;  // size == iteration budget K
  Vector final_x;                    // iterate after the last step
};

}  // namespace fw

#endif  // FW_TRACE_HPP
