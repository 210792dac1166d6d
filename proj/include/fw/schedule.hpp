#ifndef FW_SCHEDULE_HPP
#define FW_SCHEDULE_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fw {

/// Power-law step-size sequence step(k) = a / (k + b)^p for k >= 1.
///
/// p = 0 gives a constant sequence (used e.g. to collapse the averaged
/// estimator onto the plain one); p > 0 gives a strictly decreasing one.
/// Validity requires step(k) in (0, 1] for every k >= 1, which reduces to
/// step(1) <= 1 since the sequence is non-increasing.
struct PowerSchedule {
  double a = 1.0;
  double b = 0.0;
  double p = 1.0;

  double operator()(long k) const {
    if (k < 1)
      throw std::invalid_argument("schedule evaluated at k < 1 (iteration counter starts at 1)");
    return a / std::pow(static_cast<double>(k) + b, p);
  }

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("schedule coefficient a must be positive");
    if (!(b >= 0.0)) throw std::invalid_argument("schedule offset b must be non-negative");
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("schedule exponent p must lie in [0, 1]");
    const double first = a / std::pow(1.0 + b, p);
    if (!(first > 0.0 && first <= 1.0))
      throw std::invalid_argument("schedule step(1) = " + std::to_string(first) +
                                  " is outside (0, 1]");
  }

  /// 1/k
  static PowerSchedule harmonic() { return {1.0, 0.0, 1.0}; }
  /// 1/sqrt(k)
  static PowerSchedule inverse_sqrt() { return {1.0, 0.0, 0.5}; }
  /// 2/(k+2), the classical exact-gradient step
  static PowerSchedule classical() { return {2.0, 2.0, 1.0}; }
  /// constant c
  static PowerSchedule constant(double c) { return {c, 0.0, 0.0}; }

  std::string describe() const {
    std::ostringstream os;
    if (p == 0.0) {
      os << a;
      return os.str();
    }
    os << a << "/";
    std::ostringstream base;
    if (b == 0.0)
      base << "k";
    else
      base << "(k+" << b << ")";
    if (p == 1.0)
      os << base.str();
    else if (p == 0.5)
      os << "sqrt(" << base.str() << ")";
    else
      os << base.str() << "^" << p;
    return os.str();
  }
};

inline double schedule_eval(const PowerSchedule& s, long k) { return s(k); }

}  // namespace fw

#endif  // FW_SCHEDULE_HPP
