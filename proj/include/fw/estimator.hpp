#ifndef FW_ESTIMATOR_HPP
#define FW_ESTIMATOR_HPP

#include <stdexcept>

#include "fw/objective.hpp"
#include "fw/random.hpp"
#include "fw/schedule.hpp"
#include "fw/types.hpp"

namespace fw {

/// One draw of the forward-gradient estimator phi(x) = <grad f(x), u> u.
/// phi is parallel to u by construction and unbiased for grad f(x) when the
/// entries of u are i.i.d. with zero mean and unit variance.
struct ForwardGradientSample {
  Vector direction;
  double scalar_derivative = 0.0;
  Vector phi;
};

/// Draws a fresh direction and evaluates the directional derivative with one
/// forward pass. The exact gradient is never touched here.
inline ForwardGradientSample sample_forward_gradient(const Objective& obj, const Vector& x,
                                                     RandomSource& rng) {
  ForwardGradientSample s;
  s.direction = rng.direction(obj.dimension());
  s.scalar_derivative = obj.directional(x, s.direction);
  s.phi = s.scalar_derivative * s.direction;
  return s;
}

/// Running average v_k = (1 - gamma_k) v_{k-1} + gamma_k phi_k, starting from
/// v_0 = 0. Updates must arrive in order; skipped or repeated steps are
/// rejected.
struct EstimatorState {
  Vector v;
  long k = 0;
  PowerSchedule gamma;

  EstimatorState(Index n, PowerSchedule gamma_schedule)
      : v(Vector::Zero(n)), k(0), gamma(gamma_schedule) {}
};

inline void update_average(EstimatorState& state, const Vector& phi, long k) {
  if (k != state.k + 1)
    throw std::invalid_argument("update_average: expected step " + std::to_string(state.k + 1) +
                                ", got " + std::to_string(k));
  require_same_size(state.v, phi, "update_average");
  const double g = state.gamma(k);
  state.v = (1.0 - g) * state.v + g * phi;
  state.k = k;
}

/// Empirical E||phi(x)||^2 / ||grad f(x)||^2 over N fresh draws. For gaussian
/// directions the population value is n + 2; for rademacher it is exactly n.
/// Both satisfy the (n + 4) bound. Requires a nonzero gradient at x; the
/// estimate is statistically meaningful from roughly 10^4 samples up.
inline double second_moment_ratio(const Objective& obj, const Vector& x, RandomSource& rng,
                                  long n_samples) {
  if (n_samples < 1) throw std::invalid_argument("second_moment_ratio: need at least one sample");
  const double grad_sq = obj.gradient(x).squaredNorm();
  if (grad_sq == 0.0)
    throw std::invalid_argument("second_moment_ratio: gradient vanishes at x, ratio undefined");
  double acc = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    const Vector u = rng.direction(obj.dimension());
    const double d = obj.directional(x, u);
    acc += d * d * u.squaredNorm();  // ||phi||^2 = d^2 ||u||^2
  }
  return acc / (static_cast<double>(n_samples) * grad_sq);
}

}  // namespace fw

#endif  // FW_ESTIMATOR_HPP
