#ifndef FW_ALGORITHM_HPP
#define FW_ALGORITHM_HPP

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fw/estimator.hpp"
#include "fw/objective.hpp"
#include "fw/random.hpp"
#include "fw/schedule.hpp"
#include "fw/sets.hpp"
#include "fw/trace.hpp"
#include "fw/types.hpp"

namespace fw {

/// Convex combination (1 - alpha) x + alpha s. Keeps iterates feasible when
/// x and s are.
inline Vector convex_step(const Vector& x, const Vector& s, double alpha) {
  require_same_size(x, s, "convex_step");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("convex_step: alpha = " + std::to_string(alpha) +
                                " is outside [0, 1]");
  return (1.0 - alpha) * x + alpha * s;
}

/// Optimality certificate <grad f(x), x - lmo(grad f(x))>. Non-negative on
/// the set, zero exactly at constrained stationary points, and an upper
/// bound on f(x) - f* for convex f.
inline double fw_gap(const Objective& obj, const FeasibleSet& set, const Vector& x) {
  const Vector g = obj.gradient(x);
  return g.dot(x - set.lmo(g));
}

enum class AlgorithmId { fw, fgfw, afgfw };

inline std::string to_string(AlgorithmId a) {
  switch (a) {
    case AlgorithmId::fw: return "fw";
    case AlgorithmId::fgfw: return "fgfw";
    case AlgorithmId::afgfw: return "afgfw";
  }
  return "?";
}

struct RunConfig {
  AlgorithmId algorithm = AlgorithmId::fw;
  long iterations = 0;
  PowerSchedule alpha = PowerSchedule::classical();
  std::optional<PowerSchedule> gamma;  // averaging schedule, afgfw only
  Vector x0;
  std::uint64_t seed = 0;
  DirectionKind direction = DirectionKind::gaussian;
  bool instrumented = false;

  /// Checks feasibility of x0 and, for afgfw, the step/averaging ratio
  /// condition alpha_k / gamma_k -> 0, enforced structurally as
  /// exponent(alpha) > exponent(gamma).
  void validate(const Objective& obj, const FeasibleSet& set) const {
    if (iterations < 0) throw std::invalid_argument("iteration budget must be non-negative");
    if (x0.size() != obj.dimension() || obj.dimension() != set.dimension())
      throw std::invalid_argument("x0/objective/set dimensions disagree");
    alpha.validate();
    if (!set.contains(x0)) throw std::invalid_argument("x0 is not feasible");
    require_finite(x0, "x0");
    if (algorithm == AlgorithmId::afgfw) {
      if (!gamma) throw std::invalid_argument("afgfw requires a gamma schedule");
      gamma->validate();
      if (!(alpha.p > gamma->p))
        throw std::invalid_argument(
            "afgfw requires alpha_k/gamma_k -> 0: alpha exponent " + std::to_string(alpha.p) +
            " must exceed gamma exponent " + std::to_string(gamma->p));
    }
  }
};

namespace detail {

inline TraceMeta make_meta(const RunConfig& cfg, const Objective& obj, const FeasibleSet& set) {
  TraceMeta meta;
  meta.algorithm = to_string(cfg.algorithm);
  meta.problem = obj.id();
  meta.set = set.id();
  meta.seed = cfg.seed;
  meta.alpha = cfg.alpha.describe();
  meta.gamma = cfg.gamma ? cfg.gamma->describe() : "";
  meta.iterations = cfg.iterations;
  meta.instrumented = cfg.instrumented;
  return meta;
}

inline double elapsed_us(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

inline void check_state(const Vector& x, double f, std::uint64_t seed, long k) {
  if (!x.allFinite())
    throw NumericError("non-finite iterate", seed, k);
  if (!std::isfinite(f))
    throw NumericError("non-finite objective value", seed, k);
}

inline void check_feasible(const FeasibleSet& set, const Vector& x, std::uint64_t seed, long k) {
  if (!set.contains(x))
    throw NumericError("iterate left the feasible set", seed, k);
}

}  // namespace detail

/// Exact-gradient conditional gradient loop:
///   s_k = argmin_{s in C} <s, grad f(x_k)>,  x_{k+1} = (1-alpha_k) x_k + alpha_k s_k.
/// Record k holds diagnostics at x_k; the gap comes for free from s_k.
inline Trace run_fw(const Objective& obj, const FeasibleSet& set, const RunConfig& cfg) {
  if (cfg.algorithm != AlgorithmId::fw)
    throw std::invalid_argument("run_fw called with a different algorithm id");
  cfg.validate(obj, set);

  Trace trace;
  trace.meta = detail::make_meta(cfg, obj, set);
  trace.records.reserve(cfg.iterations);
  const std::optional<double> f_star = obj.reference_value();

  Vector x = cfg.x0;
  for (long k = 1; k <= cfg.iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const double f = obj.value(x);
    detail::check_state(x, f, cfg.seed, k);
    const Vector g = obj.gradient(x);
    const Vector s = set.lmo(g);
    const double gap = g.dot(x - s);
    x = convex_step(x, s, cfg.alpha(k));
    detail::check_feasible(set, x, cfg.seed, k);

    TraceRecord rec;
    rec.k = k;
    rec.f_value = f;
    if (f_star) rec.suboptimality = f - *f_star;
    rec.fw_gap = gap;
    rec.wall_time_us = detail::elapsed_us(t0);
    trace.records.push_back(rec);
  }
  trace.final_x = x;
  return trace;
}

/// Conditional gradient fed by the raw forward-gradient estimator:
///   u_k ~ directions,  u'_k = <grad f(x_k), u_k> u_k  (one forward pass),
///   s_k = argmin <s, u'_k>,  x_{k+1} = (1-alpha_k) x_k + alpha_k s_k.
/// The exact gradient is touched only in instrumented mode, for diagnostics.
inline Trace run_fgfw(const Objective& obj, const FeasibleSet& set, const RunConfig& cfg) {
  if (cfg.algorithm != AlgorithmId::fgfw)
    throw std::invalid_argument("run_fgfw called with a different algorithm id");
  cfg.validate(obj, set);

  Trace trace;
  trace.meta = detail::make_meta(cfg, obj, set);
  trace.records.reserve(cfg.iterations);
  const std::optional<double> f_star = obj.reference_value();

  RandomSource rng(cfg.seed, cfg.direction);
  Vector x = cfg.x0;
  for (long k = 1; k <= cfg.iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const Vector u = rng.direction(obj.dimension());
    const auto [f, d] = obj.value_and_directional(x, u);  // one forward pass
    detail::check_state(x, f, cfg.seed, k);
    if (!std::isfinite(d))
      throw NumericError("non-finite directional derivative", cfg.seed, k);
    const Vector phi = d * u;

    TraceRecord rec;
    rec.k = k;
    rec.f_value = f;
    if (f_star) rec.suboptimality = f - *f_star;
    if (cfg.instrumented) {
      const Vector g = obj.gradient(x);
      rec.fw_gap = g.dot(x - set.lmo(g));
      rec.estimator_error = (phi - g).squaredNorm();
    }

    const Vector s = set.lmo(phi);
    x = convex_step(x, s, cfg.alpha(k));
    detail::check_feasible(set, x, cfg.seed, k);
    rec.wall_time_us = detail::elapsed_us(t0);
    trace.records.push_back(rec);
  }
  trace.final_x = x;
  return trace;
}

/// Conditional gradient fed by the running average of forward gradients:
///   v_k = (1 - gamma_k) v_{k-1} + gamma_k u'_k,  v_0 = 0,
///   s_k = argmin <s, v_k>,  x_{k+1} = (1-alpha_k) x_k + alpha_k s_k.
/// With gamma_k == 1 the average degenerates to u'_k and the loop reproduces
/// run_fgfw trace-for-trace under a shared seed.
inline Trace run_afgfw(const Objective& obj, const FeasibleSet& set, const RunConfig& cfg) {
  if (cfg.algorithm != AlgorithmId::afgfw)
    throw std::invalid_argument("run_afgfw called with a different algorithm id");
  cfg.validate(obj, set);

  Trace trace;
  trace.meta = detail::make_meta(cfg, obj, set);
  trace.records.reserve(cfg.iterations);
  const std::optional<double> f_star = obj.reference_value();

  RandomSource rng(cfg.seed, cfg.direction);
  Vector x = cfg.x0;
  EstimatorState est(obj.dimension(), *cfg.gamma);
  for (long k = 1; k <= cfg.iterations; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const Vector u = rng.direction(obj.dimension());
    const auto [f, d] = obj.value_and_directional(x, u);  // one forward pass
    detail::check_state(x, f, cfg.seed, k);
    if (!std::isfinite(d))
      throw NumericError("non-finite directional derivative", cfg.seed, k);
    update_average(est, d * u, k);

    TraceRecord rec;
    rec.k = k;
    rec.f_value = f;
    if (f_star) rec.suboptimality = f - *f_star;
    if (cfg.instrumented) {
      const Vector g = obj.gradient(x);
      rec.fw_gap = g.dot(x - set.lmo(g));
      rec.estimator_error = (est.v - g).squaredNorm();
    }

    const Vector s = set.lmo(est.v);
    x = convex_step(x, s, cfg.alpha(k));
    detail::check_feasible(set, x, cfg.seed, k);
    rec.wall_time_us = detail::elapsed_us(t0);
    trace.records.push_back(rec);
  }
  trace.final_x = x;
  return trace;
}

inline Trace run(const Objective& obj, const FeasibleSet& set, const RunConfig& cfg) {
  switch (cfg.algorithm) {
    case AlgorithmId::fw: return run_fw(obj, set, cfg);
    case AlgorithmId::fgfw: return run_fgfw(obj, set, cfg);
    case AlgorithmId::afgfw: return run_afgfw(obj, set, cfg);
  }
  throw std::invalid_argument("unknown algorithm id");
}

/// Reference value f* by a long exact-gradient run with the classical step,
/// returning the best value seen. Used to stamp objectives that lack a
/// closed-form optimum before benchmarking stochastic variants against them.
inline double reference_value_by_fw(const Objective& obj, const FeasibleSet& set,
                                    long iterations, const Vector& x0) {
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::fw;
  cfg.iterations = 0;
  cfg.x0 = x0;
  cfg.validate(obj, set);

  Vector x = x0;
  double best = obj.value(x);
  const PowerSchedule alpha = PowerSchedule::classical();
  for (long k = 1; k <= iterations; ++k) {
    const Vector g = obj.gradient(x);
    x = convex_step(x, set.lmo(g), alpha(k));
    const double f = obj.value(x);
    if (!std::isfinite(f)) throw NumericError("non-finite value in reference run", 0, k);
    if (f < best) best = f;
  }
  return best;
}

}  // namespace fw

#endif  // FW_ALGORITHM_HPP
