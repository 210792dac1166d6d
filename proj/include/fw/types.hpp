#ifndef FW_TYPES_HPP
#define FW_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fw {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = Vec<double>;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when non-finite values enter algorithm state. Carries enough
/// context (seed, iteration) to re-run the offending trajectory in isolation.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::uint64_t seed, long iteration)
      : std::runtime_error(what + " (seed=" + std::to_string(seed) +
                           ", iteration=" + std::to_string(iteration) + ")"),
        seed_(seed),
        iteration_(iteration) {}

  std::uint64_t seed() const { return seed_; }
  long iteration() const { return iteration_; }

 private:
  std::uint64_t seed_;
  long iteration_;
};

inline void require_same_size(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace fw

#endif  // FW_TYPES_HPP
