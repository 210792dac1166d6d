#include <doctest.h>

#include <cmath>
#include <memory>

#include "fw/estimator.hpp"
#include "fw/problems/least_squares.hpp"
#include "fw/problems/logistic.hpp"
#include "fw/problems/quadratic.hpp"
#include "support.hpp"

using namespace fw;

namespace {

// Objective whose gradient is x, with a controllable dimension: lets tests
// force directions through a RandomSource-free path where needed.
Vector make(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("forward gradient with forced directions") {
  const Quadratic obj = Quadratic::identity(2);
  const Vector x = make({1, 2});
  // phi = <grad f, u> u with grad f = x.
  const Vector u1 = make({1, 0});
  CHECK(obj.directional(x, u1) * u1 == make({1, 0}));
  const Vector u2 = make({0, 1});
  CHECK(obj.directional(x, u2) * u2 == make({0, 2}));
}

TEST_CASE("sampled forward gradient is parallel to its direction") {
  const Quadratic obj = Quadratic::seeded(8, 17);
  RandomSource rng(100);
  Vector x(8);
  for (Index i = 0; i < 8; ++i) x[i] = rng.next_gaussian();
  for (int t = 0; t < 20; ++t) {
    const ForwardGradientSample s = sample_forward_gradient(obj, x, rng);
    CHECK(s.phi == s.scalar_derivative * s.direction);
    CHECK(s.phi.norm() ==
          doctest::Approx(std::abs(s.scalar_derivative) * s.direction.norm()).epsilon(1e-12));
  }
}

TEST_CASE("update_average arithmetic") {
  EstimatorState state(2, PowerSchedule::inverse_sqrt());
  CHECK(state.v == Vector::Zero(2));
  CHECK(state.k == 0);

  // gamma_1 = 1 overwrites v_0.
  update_average(state, make({3, -1}), 1);
  CHECK(state.v == make({3, -1}));

  EstimatorState half(2, PowerSchedule::constant(0.5));
  update_average(half, make({4, 0}), 1);   // v = (1-0.5)*0 + 0.5*(4,0) = (2,0)
  update_average(half, make({0, 2}), 2);   // v = 0.5*(2,0) + 0.5*(0,2) = (1,1)
  CHECK(half.v == make({1, 1}));
}

TEST_CASE("update_average rejects out-of-order steps") {
  EstimatorState state(2, PowerSchedule::inverse_sqrt());
  update_average(state, make({1, 1}), 1);
  CHECK_THROWS_AS(update_average(state, make({1, 1}), 3), std::invalid_argument);
  CHECK_THROWS_AS(update_average(state, make({1, 1}), 1), std::invalid_argument);
  CHECK_THROWS_AS(update_average(state, Vector::Zero(5), 2), std::invalid_argument);
}

TEST_CASE("second moment ratio: closed forms") {
  SUBCASE("n = 1 gaussian gives the fourth moment, about 3") {
    const Quadratic obj = Quadratic::identity(1);
    RandomSource rng(5);
    const double ratio = second_moment_ratio(obj, make({1.0}), rng, 400000);
    CHECK(ratio == doctest::Approx(3.0).epsilon(0.05));
  }
  SUBCASE("n = 10 gaussian gives n + 2 within the n + 4 bound") {
    const Quadratic obj = Quadratic::identity(10);
    RandomSource rng(6);
    Vector x = Vector::Constant(10, 1.0 / std::sqrt(10.0));
    const double ratio = second_moment_ratio(obj, x, rng, 1000000);
    CHECK(ratio >= 11.4);
    CHECK(ratio <= 12.6);
    CHECK(ratio <= 14.0);
  }
  SUBCASE("rademacher gives exactly n") {
    const Quadratic obj = Quadratic::identity(6);
    RandomSource rng(7, DirectionKind::rademacher);
    Vector x = Vector::Constant(6, 0.5);
    // ||u||^2 = n deterministically, E<g,u>^2 = ||g||^2; modest N suffices.
    const double ratio = second_moment_ratio(obj, x, rng, 200000);
    CHECK(ratio == doctest::Approx(6.0).epsilon(0.02));
    CHECK(ratio <= 6.0 + 4.0);
  }
  SUBCASE("zero gradient is rejected") {
    const Quadratic obj = Quadratic::identity(3);
    RandomSource rng(8);
    CHECK_THROWS_AS(second_moment_ratio(obj, Vector::Zero(3), rng, 100),
                    std::invalid_argument);
  }
}

TEST_CASE("Monte Carlo mean of phi lands within 1% of the gradient") {
  const Quadratic obj = Quadratic::identity(10);
  const Vector x = Vector::Constant(10, 1.0 / std::sqrt(10.0));
  const Vector grad = obj.gradient(x);
  RandomSource rng(2027);
  Vector mean = Vector::Zero(10);
  const long samples = 1000000;
  for (long s = 0; s < samples; ++s) {
    const Vector u = rng.direction(10);
    mean += obj.directional(x, u) * u;
  }
  mean /= static_cast<double>(samples);
  CHECK((mean - grad).lpNorm<Eigen::Infinity>() <= 0.01 * grad.norm());
}

TEST_CASE("unbiasedness of the estimator across the zoo (5-sigma gate)") {
  auto data = std::make_shared<Dataset>(generate_synthetic(30, 4, 3, 13));
  const MultinomialLogistic logistic(data);
  const Quadratic quadratic = Quadratic::seeded(10, 5);
  const LeastSquares least_squares = LeastSquares::seeded(24, 8, 9);
  const Objective* zoo[] = {&quadratic, &least_squares, &logistic};

  const long samples = 1000000;
  RandomSource point_rng(777);
  for (const Objective* obj : zoo) {
    CAPTURE(obj->id());
    for (int rep = 0; rep < 5; ++rep) {
      const Index n = obj->dimension();
      Vector x(n);
      for (Index i = 0; i < n; ++i) x[i] = 0.4 * point_rng.next_gaussian();
      const Vector grad = obj->gradient(x);

      RandomSource rng(1000 + rep);
      Vector mean = Vector::Zero(n);
      Vector m2 = Vector::Zero(n);
      for (long s = 1; s <= samples; ++s) {
        const Vector u = rng.direction(n);
        const Vector phi = obj->directional(x, u) * u;
        const Vector delta = phi - mean;
        mean += delta / static_cast<double>(s);
        m2 += delta.cwiseProduct(phi - mean);
      }
      const Vector se =
          (m2 / static_cast<double>(samples - 1)).cwiseSqrt() / std::sqrt(double(samples));
      for (Index i = 0; i < n; ++i) {
        CAPTURE(rep);
        CAPTURE(i);
        CHECK(std::abs(mean[i] - grad[i]) <= 5.0 * se[i]);
      }
    }
  }
}

TEST_CASE("second moment stays within the (n + 4) bound across the zoo") {
  auto data = std::make_shared<Dataset>(generate_synthetic(30, 4, 3, 14));
  const MultinomialLogistic logistic(data);
  const Quadratic quadratic = Quadratic::seeded(10, 5);
  const LeastSquares least_squares = LeastSquares::seeded(24, 8, 9);
  const Objective* zoo[] = {&quadratic, &least_squares, &logistic};
  RandomSource point_rng(9);
  for (const Objective* obj : zoo) {
    const Index n = obj->dimension();
    for (int rep = 0; rep < 3; ++rep) {
      Vector x(n);
      for (Index i = 0; i < n; ++i) x[i] = 0.3 * point_rng.next_gaussian();
      RandomSource rng(50 + rep);
      const double ratio = second_moment_ratio(*obj, x, rng, 300000);
      CHECK(ratio <= (static_cast<double>(n) + 4.0) * 1.01);
    }
  }
}

TEST_CASE("averaging contracts the estimator variance at a stationary point") {
  // v_k tracked at a fixed x with gamma_k = 1/sqrt(k): at k = 1000 the mean
  // squared error must be at least 10x below the raw single-sample error
  // E||phi - grad||^2 (Monte Carlo over 100 replicates).
  const Quadratic obj = Quadratic::seeded(8, 23);
  Vector x(8);
  RandomSource point_rng(3);
  for (Index i = 0; i < 8; ++i) x[i] = point_rng.next_gaussian();
  const Vector grad = obj.gradient(x);

  const int replicates = 100;
  const long horizon = 1000;
  double averaged_error = 0.0;
  double raw_error = 0.0;
  long raw_count = 0;
  for (int rep = 0; rep < replicates; ++rep) {
    RandomSource rng(4000 + rep);
    EstimatorState state(8, PowerSchedule::inverse_sqrt());
    for (long k = 1; k <= horizon; ++k) {
      const ForwardGradientSample s = sample_forward_gradient(obj, x, rng);
      update_average(state, s.phi, k);
      if (k <= 100) {
        raw_error += (s.phi - grad).squaredNorm();
        ++raw_count;
      }
    }
    averaged_error += (state.v - grad).squaredNorm();
  }
  averaged_error /= replicates;
  raw_error /= static_cast<double>(raw_count);
  CHECK(averaged_error < raw_error / 10.0);
}
