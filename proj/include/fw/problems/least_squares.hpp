#ifndef FW_PROBLEMS_LEAST_SQUARES_HPP
#define FW_PROBLEMS_LEAST_SQUARES_HPP

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>
#include <utility>

#include "fw/objective.hpp"
#include "fw/random.hpp"
#include "fw/types.hpp"

namespace fw {

/// Ridge-regularized least squares
///   f(x) = 1/(2m) ||Ax - b||^2 + (lambda/2) ||x||^2,
/// gradient = A'(Ax - b)/m + lambda x, M = lambda_max(A'A)/m + lambda.
class LeastSquares : public ScalarProgram<LeastSquares> {
 public:
  LeastSquares(Matrix a, Vector b, double ridge, std::string name = "least_squares")
      : a_(std::move(a)), b_(std::move(b)), ridge_(ridge), name_(std::move(name)) {
    if (a_.rows() != b_.size()) throw std::invalid_argument("LeastSquares: A/b size mismatch");
    if (a_.rows() < 1) throw std::invalid_argument("LeastSquares: empty system");
    if (ridge_ < 0.0) throw std::invalid_argument("LeastSquares: ridge must be non-negative");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a_.transpose() * a_, Eigen::EigenvaluesOnly);
    lipschitz_ = es.eigenvalues().maxCoeff() / static_cast<double>(a_.rows()) + ridge_;
  }

  static LeastSquares seeded(Index rows, Index cols, std::uint64_t seed, double ridge = 0.1) {
    RandomSource rng(seed);
    Matrix a(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) a(i, j) = rng.next_gaussian();
    Vector truth(cols);
    for (Index j = 0; j < cols; ++j) truth[j] = rng.next_gaussian();
    truth *= 1.5 / truth.lpNorm<1>();
    Vector b = a * truth;
    for (Index i = 0; i < rows; ++i) b[i] += 0.1 * rng.next_gaussian();
    return LeastSquares(std::move(a), std::move(b), ridge,
                        "least_squares(m=" + std::to_string(rows) +
                            ",n=" + std::to_string(cols) + ",seed=" + std::to_string(seed) + ")");
  }

  Index dimension() const override { return a_.cols(); }

  double value(const Vector& x) const override {
    const Vector r = a_ * x - b_;
    return 0.5 * r.squaredNorm() / static_cast<double>(a_.rows()) +
           0.5 * ridge_ * x.squaredNorm();
  }

  Vector gradient(const Vector& x) const override {
    return a_.transpose() * (a_ * x - b_) / static_cast<double>(a_.rows()) + ridge_ * x;
  }

  std::optional<double> smoothness() const override { return lipschitz_; }

  std::string id() const override { return name_; }

  template <class T>
  T eval(const Vec<T>& x) const {
    const double inv_m = 1.0 / static_cast<double>(a_.rows());
    const Vec<T> ax = a_.lazyProduct(x);
    T acc(0.0);
    for (Index i = 0; i < ax.size(); ++i) {
      const T r = ax[i] - b_[i];
      acc += r * r;
    }
    T reg(0.0);
    for (Index j = 0; j < x.size(); ++j) reg += x[j] * x[j];
    return T(0.5) * inv_m * acc + T(0.5 * ridge_) * reg;
  }

 private:
  Matrix a_;
  Vector b_;
  double ridge_ = 0.0;
  double lipschitz_ = 0.0;
  std::string name_;
};

}  // namespace fw

#endif  // FW_PROBLEMS_LEAST_SQUARES_HPP
