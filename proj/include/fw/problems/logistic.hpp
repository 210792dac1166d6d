#ifndef FW_PROBLEMS_LOGISTIC_HPP
#define FW_PROBLEMS_LOGISTIC_HPP

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fw/objective.hpp"
#include "fw/random.hpp"
#include "fw/sets.hpp"
#include "fw/types.hpp"

namespace fw {

/// Labeled classification data. Labels are 1-based (1..classes).
struct Dataset {
  Matrix features;          // one row per instance
  std::vector<int> labels;  // values in 1..classes
  int classes = 0;

  Index instance_count() const { return features.rows(); }
  Index feature_count() const { return features.cols(); }

  void validate() const {
    if (features.rows() < 1) throw std::invalid_argument("Dataset: no instances");
    if (classes < 2) throw std::invalid_argument("Dataset: need at least two classes");
    if (static_cast<Index>(labels.size()) != features.rows())
      throw std::invalid_argument("Dataset: label/feature count mismatch");
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] < 1 || labels[i] > classes)
        throw std::invalid_argument("Dataset: label out of range at instance " +
                                    std::to_string(i) + " (value " +
                                    std::to_string(labels[i]) + ")");
  }
};

/// Class-conditional gaussian blobs with separated means; deterministic
/// under the seed, labels balanced by construction. A desk-scale stand-in
/// for image data when none is on disk.
inline Dataset generate_synthetic(Index instances, Index features, int classes,
                                  std::uint64_t seed) {
  if (instances < 1 || features < 1 || classes < 2)
    throw std::invalid_argument("generate_synthetic: counts must be positive (classes >= 2)");
  RandomSource rng(seed);
  Matrix means(classes, features);
  for (int j = 0; j < classes; ++j)
    for (Index f = 0; f < features; ++f) means(j, f) = 3.0 * rng.next_gaussian();
  Dataset data;
  data.features.resize(instances, features);
  data.labels.resize(instances);
  data.classes = classes;
  for (Index i = 0; i < instances; ++i) {
    const int label = 1 + static_cast<int>(i % classes);
    data.labels[i] = label;
    for (Index f = 0; f < features; ++f)
      data.features(i, f) = means(label - 1, f) + rng.next_gaussian();
  }
  return data;
}

/// Negative average log-likelihood of the softmax model,
///   loss(theta) = -(1/m) sum_i log softmax_{y_i}(theta' x_i) >= 0,
/// with theta blocked by class: theta = [theta_1; ...; theta_K], each block
/// of length d. Softmax uses max-subtraction, so the value is finite for any
/// finite theta.
inline double logistic_loss(const Vector& theta, const Dataset& data) {
  data.validate();
  const Matrix& x = data.features;
  const Index m = x.rows();
  const Index d = x.cols();
  if (theta.size() != d * data.classes)
    throw std::invalid_argument("logistic_loss: theta size must be features*classes");
  Eigen::Map<const Matrix> theta_mat(theta.data(), d, data.classes);
  const Matrix scores = x * theta_mat;
  double total = 0.0;
  for (Index i = 0; i < m; ++i) {
    const auto row = scores.row(i);
    const double mx = row.maxCoeff();
    total += std::log((row.array() - mx).exp().sum()) + mx - row[data.labels[i] - 1];
  }
  return total / static_cast<double>(m);
}

/// Fraction of instances whose top score matches the label (score ties go to
/// the lowest class index).
inline double accuracy(const Vector& theta, const Dataset& data) {
  Eigen::Map<const Matrix> theta_mat(theta.data(), data.feature_count(), data.classes);
  const Matrix scores = data.features * theta_mat;
  Index hits = 0;
  for (Index i = 0; i < scores.rows(); ++i) {
    Index best = 0;
    for (int j = 1; j < data.classes; ++j)
      if (scores(i, j) > scores(i, best)) best = j;
    if (best == data.labels[i] - 1) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.rows());
}

/// Multinomial logistic regression objective over class-blocked parameters.
/// Column j of the d x K matrix view onto theta is exactly block theta_j, so
/// no copies are made. The smoothness bound lambda_max(X'X)/(2m) is computed
/// on first request (it costs an X'X for large data).
class MultinomialLogistic : public ScalarProgram<MultinomialLogistic> {
 public:
  explicit MultinomialLogistic(std::shared_ptr<const Dataset> data, std::string name = "logistic")
      : data_(std::move(data)), name_(std::move(name)) {
    data_->validate();
  }

  Index dimension() const override { return data_->feature_count() * data_->classes; }

  double value(const Vector& theta) const override { return logistic_loss(theta, *data_); }

  Vector gradient(const Vector& theta) const override {
    const Matrix& x = data_->features;
    const Index m = x.rows();
    const Index d = x.cols();
    Eigen::Map<const Matrix> theta_mat(theta.data(), d, data_->classes);
    Matrix residual = x * theta_mat;  // scores, becomes softmax - indicator in place
    for (Index i = 0; i < m; ++i) {
      auto row = residual.row(i);
      const double mx = row.maxCoeff();
      row = (row.array() - mx).exp();
      row /= row.sum();
      row[data_->labels[i] - 1] -= 1.0;
    }
    Matrix grad = x.transpose() * residual / static_cast<double>(m);
    return Eigen::Map<Vector>(grad.data(), grad.size());
  }

  /// Softmax class probabilities for one instance (diagnostic; sums to 1).
  Vector probabilities(const Vector& theta, Index instance) const {
    Eigen::Map<const Matrix> theta_mat(theta.data(), data_->feature_count(), data_->classes);
    Vector scores = theta_mat.transpose() * data_->features.row(instance).transpose();
    const double mx = scores.maxCoeff();
    Vector p = (scores.array() - mx).exp();
    return p / p.sum();
  }

  std::optional<double> smoothness() const override {
    std::call_once(lipschitz_once_, [this] {
      const Matrix& x = data_->features;
      Eigen::SelfAdjointEigenSolver<Matrix> es(x.transpose() * x, Eigen::EigenvaluesOnly);
      lipschitz_ = es.eigenvalues().maxCoeff() / (2.0 * static_cast<double>(x.rows()));
    });
    return lipschitz_;
  }

  std::string id() const override { return name_; }

  template <class T>
  T eval(const Vec<T>& theta) const {
    using std::exp;
    using std::fmax;
    using std::log;
    const Matrix& x = data_->features;
    const Index m = x.rows();
    const Index d = x.cols();
    const int classes = data_->classes;
    Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>> theta_mat(theta.data(), d,
                                                                                 classes);
    const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> scores = x.lazyProduct(theta_mat);
    T total(0.0);
    for (Index i = 0; i < m; ++i) {
      T mx = scores(i, 0);
      for (int j = 1; j < classes; ++j) mx = fmax(mx, scores(i, j));
      T sum_exp(0.0);
      for (int j = 0; j < classes; ++j) sum_exp += exp(scores(i, j) - mx);
      total += log(sum_exp) + mx - scores(i, data_->labels[i] - 1);
    }
    return total / T(static_cast<double>(m));
  }

  const Dataset& data() const { return *data_; }

  /// The experiment's constraint family: one l1 ball of the given radius per
  /// class block.
  std::shared_ptr<const FeasibleSet> constraint_set(double radius = 1.0) const {
    auto ball = std::make_shared<L1Ball>(data_->feature_count(), radius);
    return std::make_shared<ProductSet>(ProductSet::power(ball, data_->classes));
  }

 private:
  std::shared_ptr<const Dataset> data_;
  mutable std::once_flag lipschitz_once_;
  mutable double lipschitz_ = 0.0;
  std::string name_;
};

}  // namespace fw

#endif  // FW_PROBLEMS_LOGISTIC_HPP
