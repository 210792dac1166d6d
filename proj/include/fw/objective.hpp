#ifndef FW_OBJECTIVE_HPP
#define FW_OBJECTIVE_HPP

#include <optional>
#include <string>
#include <utility>

#include "fw/dual.hpp"
#include "fw/types.hpp"

namespace fw {

/// Forward-mode directional derivative <grad f(x), u> of a generic scalar
/// program. The program is evaluated exactly once, on dual numbers seeded
/// with (x_i, u_i); nothing proportional to the program's depth is stored.
template <class F>
double jvp(F&& program, const Vector& x, const Vector& u) {
  require_same_size(x, u, "jvp");
  DualVector xs(x.size());
  for (Index i = 0; i < x.size(); ++i) xs[i] = Duald(x[i], u[i]);
  Duald out = std::forward<F>(program)(xs);
  return out.tangent();
}

/// A differentiable objective over R^n. Implementations provide the value,
/// the exact gradient (reserved for diagnostics and the exact-gradient
/// algorithm), and a single-pass directional derivative. The consistency
/// contract directional(x, u) == <gradient(x), u> is enforced by tests.
///
/// Evaluations are const and safe under concurrent read-only use.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual double directional(const Vector& x, const Vector& u) const = 0;

  /// Value and directional derivative together. Dual-number implementations
  /// produce both from the same single forward pass.
  virtual std::pair<double, double> value_and_directional(const Vector& x,
                                                          const Vector& u) const {
    return {value(x), directional(x, u)};
  }

  /// Lipschitz constant of the gradient, when known.
  virtual std::optional<double> smoothness() const { return std::nullopt; }

  /// Reference optimal value f* over the feasible set in use, when known.
  std::optional<double> reference_value() const { return reference_; }
  void set_reference_value(double f_star) { reference_ = f_star; }

  virtual std::string id() const { return "objective"; }

 private:
  std::optional<double> reference_;
};

/// CRTP adapter for objectives written as one generic scalar program
/// `template <class T> T eval(const Vec<T>&) const`. The directional
/// derivative runs that program on duals; value() defaults to the double
/// instantiation but may be overridden with a vectorized fast path (tests
/// pin the two paths together).
template <class Derived>
class ScalarProgram : public Objective {
 public:
  double value(const Vector& x) const override {
    return derived().template eval<double>(x);
  }

  double directional(const Vector& x, const Vector& u) const override {
    return jvp([this](const DualVector& xs) { return derived().template eval<Duald>(xs); }, x, u);
  }

  std::pair<double, double> value_and_directional(const Vector& x,
                                                  const Vector& u) const override {
    require_same_size(x, u, "value_and_directional");
    DualVector xs(x.size());
    for (Index i = 0; i < x.size(); ++i) xs[i] = Duald(x[i], u[i]);
    const Duald out = derived().template eval<Duald>(xs);
    return {out.value(), out.tangent()};
  }

 private:
  const Derived& derived() const { return static_cast<const Derived&>(*this); }
};

}  // namespace fw

#endif  // FW_OBJECTIVE_HPP
