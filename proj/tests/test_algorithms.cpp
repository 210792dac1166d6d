#include <doctest.h>

#include <cmath>
#include <memory>

#include "fw/algorithm.hpp"
#include "fw/problems/quadratic.hpp"
#include "fw/sets.hpp"
#include "support.hpp"

using namespace fw;

namespace {

RunConfig base_config(AlgorithmId algo, long iterations, Index n) {
  RunConfig cfg;
  cfg.algorithm = algo;
  cfg.iterations = iterations;
  cfg.x0 = Vector::Zero(n);
  cfg.seed = 17;
  if (algo == AlgorithmId::afgfw) cfg.gamma = PowerSchedule::inverse_sqrt();
  if (algo != AlgorithmId::fw) cfg.alpha = PowerSchedule::harmonic();
  return cfg;
}

// Objective returning NaN once x moves away from the origin; exercises the
// non-finite-state abort path.
class PoisonObjective : public Objective {
 public:
  Index dimension() const override { return 2; }
  double value(const Vector& x) const override {
    return x.norm() > 0.0 ? std::nan("") : 0.0;
  }
  Vector gradient(const Vector&) const override { return Vector::Ones(2); }
  double directional(const Vector&, const Vector& u) const override { return u.sum(); }
  std::string id() const override { return "poison"; }
};

}  // namespace

TEST_CASE("exact loop: one hand-executed iteration") {
  const Quadratic obj = Quadratic::identity(2);
  const L1Ball ball(2, 1.0);
  RunConfig cfg = base_config(AlgorithmId::fw, 1, 2);
  cfg.alpha = PowerSchedule::classical();  // alpha_1 = 2/3
  Vector x0(2);
  x0 << 1, 0;
  cfg.x0 = x0;
  const Trace trace = run_fw(obj, ball, cfg);
  REQUIRE(trace.records.size() == 1);
  // grad f(x0) = (1,0); lmo -> (-1,0); x1 = (1/3)(1,0) + (2/3)(-1,0) = (-1/3,0)
  CHECK(trace.final_x[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(trace.final_x[1] == 0.0);
  CHECK(trace.records[0].f_value == doctest::Approx(0.5));
  CHECK(trace.records[0].fw_gap.has_value());
}

TEST_CASE("exact loop from the interior optimum still satisfies the rate bound") {
  // At x0 = 0 the gradient vanishes; the oracle's tie rule picks +e_1 and the
  // loop wanders along vertices, yet the 2MD^2/(k+2) certificate holds
  // (M = 1, D = 2, f* = 0 for the identity quadratic over the unit l1 ball).
  Quadratic obj = Quadratic::identity(4);
  obj.set_reference_value(0.0);
  const L1Ball ball(4, 1.0);
  RunConfig cfg = base_config(AlgorithmId::fw, 2000, 4);
  cfg.alpha = PowerSchedule::classical();
  const Trace trace = run_fw(obj, ball, cfg);
  for (const TraceRecord& rec : trace.records)
    CHECK(*rec.suboptimality <= 8.0 / (static_cast<double>(rec.k) + 2.0) + 1e-12);
}

TEST_CASE("an aligned direction reproduces the exact oracle choice") {
  // When u' = <grad, u> u shares the argmax-|.| coordinate and its sign with
  // the gradient, the l1 oracle cannot tell them apart.
  const Quadratic obj = Quadratic::seeded(6, 13);
  const L1Ball ball(6, 1.0);
  RandomSource rng(71);
  Vector x(6);
  for (Index i = 0; i < 6; ++i) x[i] = 0.1 * rng.next_gaussian();
  const Vector g = obj.gradient(x);
  Vector u = Vector::Zero(6);
  u[argmax_abs(g)] = 1.0;  // direction pinned to the gradient's top coordinate
  const Vector phi = obj.directional(x, u) * u;
  CHECK(ball.lmo(phi) == ball.lmo(g));
}

TEST_CASE("zero-budget runs return the start point and an empty trace") {
  const Quadratic obj = Quadratic::identity(3);
  const L1Ball ball(3, 1.0);
  for (const AlgorithmId algo : {AlgorithmId::fw, AlgorithmId::fgfw, AlgorithmId::afgfw}) {
    const RunConfig cfg = base_config(algo, 0, 3);
    const Trace trace = run(obj, ball, cfg);
    CHECK(trace.records.empty());
    CHECK(trace.final_x == Vector::Zero(3));
  }
}

TEST_CASE("classical-step exact run respects the 2MD^2/(k+2) certificate") {
  Quadratic obj = Quadratic::seeded(10, 7);
  const L1Ball ball(10, 1.0);
  obj.set_reference_value(testing::l1_quadratic_pgd(obj.q(), obj.c(), 1.0));
  RunConfig cfg = base_config(AlgorithmId::fw, 2000, 10);
  cfg.alpha = PowerSchedule::classical();
  const Trace trace = run_fw(obj, ball, cfg);
  const double md2 = *obj.smoothness() * ball.diameter() * ball.diameter();
  for (const TraceRecord& rec : trace.records) {
    REQUIRE(rec.suboptimality.has_value());
    CHECK(*rec.suboptimality <= 2.0 * md2 / (static_cast<double>(rec.k) + 2.0) + 1e-12);
  }
}

TEST_CASE("every iterate stays feasible across algorithms and sets") {
  const Quadratic obj = Quadratic::seeded(6, 19);
  const L1Ball ball(6, 1.0);
  const L2Ball sphere(6, 1.0);
  const Box box(-Vector::Ones(6), Vector::Ones(6));
  const FeasibleSet* sets[] = {&ball, &sphere, &box};
  for (const FeasibleSet* set : sets) {
    for (const AlgorithmId algo : {AlgorithmId::fw, AlgorithmId::fgfw, AlgorithmId::afgfw}) {
      RunConfig cfg = base_config(algo, 500, 6);
      // the loops check contains() internally and abort on violation
      CHECK_NOTHROW(run(obj, *set, cfg));
    }
  }
}

TEST_CASE("fixed seed reproduces the stochastic trace bit for bit") {
  const Quadratic obj = Quadratic::seeded(8, 5);
  const L1Ball ball(8, 1.0);
  for (const AlgorithmId algo : {AlgorithmId::fgfw, AlgorithmId::afgfw}) {
    const RunConfig cfg = base_config(algo, 300, 8);
    const Trace a = run(obj, ball, cfg);
    const Trace b = run(obj, ball, cfg);
    REQUIRE(a.records.size() == b.records.size());
    CHECK(a.final_x == b.final_x);
    for (std::size_t i = 0; i < a.records.size(); ++i)
      CHECK(a.records[i].f_value == b.records[i].f_value);
  }
}

TEST_CASE("gamma == 1 collapses the averaged loop onto the plain one") {
  const Quadratic obj = Quadratic::seeded(8, 5);
  const L1Ball ball(8, 1.0);
  RunConfig plain = base_config(AlgorithmId::fgfw, 400, 8);
  RunConfig averaged = base_config(AlgorithmId::afgfw, 400, 8);
  averaged.gamma = PowerSchedule::constant(1.0);
  const Trace a = run_fgfw(obj, ball, plain);
  const Trace b = run_afgfw(obj, ball, averaged);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.final_x == b.final_x);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(a.records[i].f_value == b.records[i].f_value);
}

TEST_CASE("instrumentation does not perturb the trajectory") {
  const Quadratic obj = Quadratic::seeded(8, 5);
  const L1Ball ball(8, 1.0);
  for (const AlgorithmId algo : {AlgorithmId::fgfw, AlgorithmId::afgfw}) {
    RunConfig cfg = base_config(algo, 300, 8);
    const Trace bare = run(obj, ball, cfg);
    cfg.instrumented = true;
    const Trace instrumented = run(obj, ball, cfg);
    CHECK(bare.final_x == instrumented.final_x);
    for (std::size_t i = 0; i < bare.records.size(); ++i) {
      CHECK(bare.records[i].f_value == instrumented.records[i].f_value);
      CHECK_FALSE(bare.records[i].estimator_error.has_value());
      CHECK(instrumented.records[i].estimator_error.has_value());
      CHECK(instrumented.records[i].fw_gap.has_value());
    }
  }
}

TEST_CASE("config validation rejects bad runs") {
  const Quadratic obj = Quadratic::identity(4);
  const L1Ball ball(4, 1.0);

  SUBCASE("infeasible start point") {
    RunConfig cfg = base_config(AlgorithmId::fw, 10, 4);
    cfg.x0 = Vector::Ones(4);  // l1 norm 4 > 1
    CHECK_THROWS_AS(run_fw(obj, ball, cfg), std::invalid_argument);
  }
  SUBCASE("afgfw without gamma") {
    RunConfig cfg = base_config(AlgorithmId::afgfw, 10, 4);
    cfg.gamma.reset();
    CHECK_THROWS_AS(run_afgfw(obj, ball, cfg), std::invalid_argument);
  }
  SUBCASE("afgfw with a non-vanishing step ratio") {
    RunConfig cfg = base_config(AlgorithmId::afgfw, 10, 4);
    cfg.alpha = PowerSchedule::inverse_sqrt();
    cfg.gamma = PowerSchedule::inverse_sqrt();
    CHECK_THROWS_AS(run_afgfw(obj, ball, cfg), std::invalid_argument);
  }
  SUBCASE("dimension mismatch") {
    RunConfig cfg = base_config(AlgorithmId::fw, 10, 5);
    CHECK_THROWS_AS(run_fw(obj, ball, cfg), std::invalid_argument);
  }
  SUBCASE("algorithm id mismatch") {
    RunConfig cfg = base_config(AlgorithmId::fw, 10, 4);
    CHECK_THROWS_AS(run_fgfw(obj, ball, cfg), std::invalid_argument);
  }
}

TEST_CASE("non-finite state aborts with seed and iteration context") {
  const PoisonObjective obj;
  const L1Ball ball(2, 1.0);
  RunConfig cfg;
  cfg.algorithm = AlgorithmId::fgfw;
  cfg.iterations = 50;
  cfg.alpha = PowerSchedule::harmonic();
  cfg.x0 = Vector::Zero(2);
  cfg.seed = 321;
  try {
    run_fgfw(obj, ball, cfg);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.seed() == 321);
    CHECK(e.iteration() >= 1);
    CHECK(std::string(e.what()).find("seed=321") != std::string::npos);
  }
}

TEST_CASE("averaged estimator beats the raw one on a short desk run") {
  Quadratic obj = Quadratic::seeded(20, 7);
  const L1Ball ball(20, 1.0);
  obj.set_reference_value(testing::l1_quadratic_pgd(obj.q(), obj.c(), 1.0));

  const long iterations = 4000;
  const int seeds = 10;
  double fgfw_tail = 0.0, afgfw_tail = 0.0;
  for (int s = 0; s < seeds; ++s) {
    RunConfig cfg = base_config(AlgorithmId::fgfw, iterations, 20);
    cfg.seed = 100 + s;
    const Trace a = run_fgfw(obj, ball, cfg);
    cfg = base_config(AlgorithmId::afgfw, iterations, 20);
    cfg.seed = 100 + s;
    const Trace b = run_afgfw(obj, ball, cfg);
    for (long k = iterations - 200; k < iterations; ++k) {
      fgfw_tail += *a.records[k].suboptimality;
      afgfw_tail += *b.records[k].suboptimality;
    }
  }
  CHECK(afgfw_tail < fgfw_tail);
}
