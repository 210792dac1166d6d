#ifndef FW_PROBLEMS_QUADRATIC_HPP
#define FW_PROBLEMS_QUADRATIC_HPP

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>
#include <utility>

#include "fw/objective.hpp"
#include "fw/random.hpp"
#include "fw/types.hpp"

namespace fw {

/// f(x) = 1/2 x'Qx - c'x with Q symmetric positive semidefinite.
/// gradient = Qx - c; the smoothness constant is the largest eigenvalue.
class Quadratic : public ScalarProgram<Quadratic> {
 public:
  Quadratic(Matrix q, Vector c, std::string name = "quadratic")
      : q_(std::move(q)), c_(std::move(c)), name_(std::move(name)) {
    if (q_.rows() != q_.cols()) throw std::invalid_argument("Quadratic: Q must be square");
    if (c_.size() != q_.rows()) throw std::invalid_argument("Quadratic: c/Q size mismatch");
    if (!q_.isApprox(q_.transpose(), 1e-12))
      throw std::invalid_argument("Quadratic: Q must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(q_, Eigen::EigenvaluesOnly);
    lipschitz_ = es.eigenvalues().maxCoeff();
  }

  /// f(x) = 1/2 ||x||^2.
  static Quadratic identity(Index n) {
    return Quadratic(Matrix::Identity(n, n), Vector::Zero(n), "quadratic_identity");
  }

  static Quadratic diagonal(Vector diag, Vector c, std::string name = "quadratic_diag") {
    return Quadratic(Matrix(diag.asDiagonal()), std::move(c), std::move(name));
  }

  /// Reproducible dense instance: eigenvalues in [0.05, 1] (so M = 1), and
  /// c = Q z for a point z with ||z||_1 = 2, which pushes the unconstrained
  /// optimum outside the unit l1 ball and makes the constraint bind.
  static Quadratic seeded(Index n, std::uint64_t seed) {
    RandomSource rng(seed);
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = rng.next_gaussian();
    Matrix b = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
    b /= es.eigenvalues().maxCoeff();
    Matrix q = 0.95 * b + 0.05 * Matrix::Identity(n, n);
    Vector z(n);
    for (Index i = 0; i < n; ++i) z[i] = rng.next_gaussian();
    z *= 2.0 / z.lpNorm<1>();
    Vector c = q * z;
    return Quadratic(std::move(q), std::move(c),
                     "quadratic(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
  }

  Index dimension() const override { return q_.rows(); }

  double value(const Vector& x) const override { return 0.5 * x.dot(q_ * x) - c_.dot(x); }

  Vector gradient(const Vector& x) const override { return q_ * x - c_; }

  std::optional<double> smoothness() const override { return lipschitz_; }

  std::string id() const override { return name_; }

  template <class T>
  T eval(const Vec<T>& x) const {
    const Vec<T> qx = q_.lazyProduct(x);  // packed kernels reject mixed scalars
    T acc(0.0);
    for (Index i = 0; i < x.size(); ++i) acc += x[i] * qx[i] * T(0.5) - c_[i] * x[i];
    return acc;
  }

  const Matrix& q() const { return q_; }
  const Vector& c() const { return c_; }

 private:
  Matrix q_;
  Vector c_;
  double lipschitz_ = 0.0;
  std::string name_;
};

}  // namespace fw

#endif  // FW_PROBLEMS_QUADRATIC_HPP
