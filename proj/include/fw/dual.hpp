#ifndef FW_DUAL_HPP
#define FW_DUAL_HPP

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fw/types.hpp"

namespace fw {

/// First-order dual number (value, tangent). Evaluating a scalar program on
/// Dual inputs (x_i, u_i) carries the directional derivative along u through
/// every elementary operation, so the tangent of the result equals
/// <grad f(x), u> after a single forward pass. Storage is two scalars per
/// number; no per-operation bookkeeping survives the evaluation.
template <class T>
class Dual {
 public:
  using value_type = T;

  constexpr Dual() : val_(T(0)), dot_(T(0)) {}
  constexpr Dual(T value) : val_(value), dot_(T(0)) {}  // NOLINT(runtime/explicit)
  constexpr Dual(T value, T tangent) : val_(value), dot_(tangent) {}

  constexpr T value() const { return val_; }
  constexpr T tangent() const { return dot_; }

  constexpr Dual operator-() const { return Dual(-val_, -dot_); }
  constexpr Dual operator+() const { return *this; }

  Dual& operator+=(const Dual& o) {
    val_ += o.val_;
    dot_ += o.dot_;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val_ -= o.val_;
    dot_ -= o.dot_;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    dot_ = val_ * o.dot_ + dot_ * o.val_;
    val_ *= o.val_;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    dot_ = (dot_ * o.val_ - val_ * o.dot_) / (o.val_ * o.val_);
    val_ /= o.val_;
    return *this;
  }

  Dual& operator+=(T s) {
    val_ += s;
    return *this;
  }
  Dual& operator-=(T s) {
    val_ -= s;
    return *this;
  }
  Dual& operator*=(T s) {
    val_ *= s;
    dot_ *= s;
    return *this;
  }
  Dual& operator/=(T s) {
    val_ /= s;
    dot_ /= s;
    return *this;
  }

 private:
  T val_;
  T dot_;
};

using Duald = Dual<double>;
using DualVector = Vec<Duald>;

// Binary arithmetic. Mixed Dual/plain overloads avoid promoting the plain
// operand to a zero-tangent dual inside hot loops.
template <class T>
inline Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T>
inline Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T>
inline Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return Dual<T>(a.value() * b.value(), a.value() * b.tangent() + a.tangent() * b.value());
}
template <class T>
inline Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return Dual<T>(a.value() / b.value(),
                 (a.tangent() * b.value() - a.value() * b.tangent()) / (b.value() * b.value()));
}

template <class T>
inline Dual<T> operator+(Dual<T> a, T s) { return a += s; }
template <class T>
inline Dual<T> operator+(T s, Dual<T> a) { return a += s; }
template <class T>
inline Dual<T> operator-(Dual<T> a, T s) { return a -= s; }
template <class T>
inline Dual<T> operator-(T s, const Dual<T>& a) { return Dual<T>(s - a.value(), -a.tangent()); }
template <class T>
inline Dual<T> operator*(const Dual<T>& a, T s) { return Dual<T>(a.value() * s, a.tangent() * s); }
template <class T>
inline Dual<T> operator*(T s, const Dual<T>& a) { return a * s; }
template <class T>
inline Dual<T> operator/(const Dual<T>& a, T s) { return Dual<T>(a.value() / s, a.tangent() / s); }
template <class T>
inline Dual<T> operator/(T s, const Dual<T>& a) {
  return Dual<T>(s / a.value(), -s * a.tangent() / (a.value() * a.value()));
}

// Comparisons look at values only; branch selection in generic programs
// (max, abs, clamping) therefore follows the primal.
template <class T>
inline bool operator==(const Dual<T>& a, const Dual<T>& b) { return a.value() == b.value(); }
template <class T>
inline bool operator!=(const Dual<T>& a, const Dual<T>& b) { return a.value() != b.value(); }
template <class T>
inline bool operator<(const Dual<T>& a, const Dual<T>& b) { return a.value() < b.value(); }
template <class T>
inline bool operator>(const Dual<T>& a, const Dual<T>& b) { return a.value() > b.value(); }
template <class T>
inline bool operator<=(const Dual<T>& a, const Dual<T>& b) { return a.value() <= b.value(); }
template <class T>
inline bool operator>=(const Dual<T>& a, const Dual<T>& b) { return a.value() >= b.value(); }
template <class T>
inline bool operator<(const Dual<T>& a, T b) { return a.value() < b; }
template <class T>
inline bool operator>(const Dual<T>& a, T b) { return a.value() > b; }
template <class T>
inline bool operator<(T a, const Dual<T>& b) { return a < b.value(); }
template <class T>
inline bool operator>(T a, const Dual<T>& b) { return a > b.value(); }

template <class T>
inline Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  T e = exp(x.value());
  return Dual<T>(e, e * x.tangent());
}

template <class T>
inline Dual<T> log(const Dual<T>& x) {
  using std::log;
  if (!(x.value() > T(0)))
    throw std::domain_error("log of non-positive dual value");
  return Dual<T>(log(x.value()), x.tangent() / x.value());
}

template <class T>
inline Dual<T> log1p(const Dual<T>& x) {
  using std::log1p;
  if (!(x.value() > T(-1)))
    throw std::domain_error("log1p of dual value <= -1");
  return Dual<T>(log1p(x.value()), x.tangent() / (T(1) + x.value()));
}

template <class T>
inline Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  if (x.value() < T(0))
    throw std::domain_error("sqrt of negative dual value");
  T r = sqrt(x.value());
  return Dual<T>(r, x.tangent() / (T(2) * r));
}

template <class T>
inline Dual<T> pow(const Dual<T>& x, T e) {
  using std::pow;
  T v = pow(x.value(), e);
  return Dual<T>(v, x.tangent() * e * pow(x.value(), e - T(1)));
}

template <class T>
inline Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return Dual<T>(sin(x.value()), x.tangent() * cos(x.value()));
}

template <class T>
inline Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return Dual<T>(cos(x.value()), -x.tangent() * sin(x.value()));
}

template <class T>
inline Dual<T> tanh(const Dual<T>& x) {
  using std::tanh;
  T t = tanh(x.value());
  return Dual<T>(t, x.tangent() * (T(1) - t * t));
}

// Nondifferentiable branches: the tangent follows the branch the primal
// comparison selects, ties resolve to the first argument (right-derivative
// convention; deterministic).
template <class T>
inline Dual<T> fmax(const Dual<T>& a, const Dual<T>& b) {
  return b.value() > a.value() ? b : a;
}

template <class T>
inline Dual<T> fmin(const Dual<T>& a, const Dual<T>& b) {
  return b.value() < a.value() ? b : a;
}

template <class T>
inline Dual<T> abs(const Dual<T>& x) {
  return x.value() < T(0) ? -x : x;
}

template <class T>
inline Dual<T> fabs(const Dual<T>& x) { return abs(x); }

template <class T>
inline bool isfinite(const Dual<T>& x) {
  using std::isfinite;
  return isfinite(x.value()) && isfinite(x.tangent());
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& x) {
  return os << "(" << x.value() << " + " << x.tangent() << "e)";
}

}  // namespace fw

namespace Eigen {

template <class T>
struct NumTraits<fw::Dual<T>> : NumTraits<T> {
  using Real = fw::Dual<T>;
  using NonInteger = fw::Dual<T>;
  using Literal = T;
  using Nested = fw::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 3,
  };
  static inline Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<T>::highest()); }
  static inline Real lowest() { return Real(NumTraits<T>::lowest()); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

// Mixed plain/dual coefficient expressions (e.g. double matrix times dual
// vector) evaluate to duals without materializing a casted copy.
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<fw::Dual<T>, T, BinaryOp> {
  using ReturnType = fw::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<T, fw::Dual<T>, BinaryOp> {
  using ReturnType = fw::Dual<T>;
};

}  // namespace Eigen

#endif  // FW_DUAL_HPP
