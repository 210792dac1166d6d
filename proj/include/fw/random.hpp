#ifndef FW_RANDOM_HPP
#define FW_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "fw/types.hpp"

namespace fw {

/// Distribution of the random direction entries. Both have zero mean and
/// unit variance, which is all the estimator requires.
enum class DirectionKind { gaussian, rademacher };

inline std::string to_string(DirectionKind k) {
  return k == DirectionKind::gaussian ? "gaussian" : "rademacher";
}

/// Seeded deterministic stream of random directions. The same seed always
/// reproduces the same bit-exact sequence: the engine is the fully specified
/// mt19937_64 and the gaussian transform is an explicit Box-Muller on raw
/// engine output, so no library-dependent distribution state is involved.
/// A RandomSource is owned by exactly one run and never shared.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, DirectionKind kind = DirectionKind::gaussian)
      : engine_(seed), seed_(seed), kind_(kind) {}

  std::uint64_t seed() const { return seed_; }
  DirectionKind kind() const { return kind_; }

  /// Uniform on (0, 1], 53-bit resolution.
  double next_uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform_pos();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// +1 or -1 with equal probability.
  double next_sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

  /// i.i.d. direction vector with zero-mean unit-variance entries.
  Vector direction(Index n) {
    Vector u(n);
    if (kind_ == DirectionKind::gaussian) {
      for (Index i = 0; i < n; ++i) u[i] = next_gaussian();
    } else {
      for (Index i = 0; i < n; ++i) u[i] = next_sign();
    }
    return u;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  DirectionKind kind_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fw

#endif  // FW_RANDOM_HPP
