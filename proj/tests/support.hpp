// Test-only oracles, independent of the library's solution paths:
// finite differences for derivatives, projected gradient descent and a
// diagonal KKT solve for l1-constrained quadratic optima, brute-force vertex
// enumeration for linear minimization.
#ifndef FW_TESTS_SUPPORT_HPP
#define FW_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "fw/objective.hpp"
#include "fw/types.hpp"

namespace fw::testing {

/// Central finite difference along u: (f(x + eps u) - f(x - eps u)) / (2 eps).
inline double directional_fd(const Objective& obj, const Vector& x, const Vector& u,
                             double eps = 1e-6) {
  return (obj.value(x + eps * u) - obj.value(x - eps * u)) / (2.0 * eps);
}

/// Componentwise central-difference gradient.
inline Vector gradient_fd(const Objective& obj, const Vector& x, double eps = 1e-6) {
  Vector g(x.size());
  Vector e = Vector::Zero(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    e[i] = 1.0;
    g[i] = (obj.value(x + eps * e) - obj.value(x - eps * e)) / (2.0 * eps);
    e[i] = 0.0;
  }
  return g;
}

/// Euclidean projection onto the l1 ball of radius r (sort-based soft
/// thresholding).
inline Vector project_l1(const Vector& v, double r) {
  if (v.lpNorm<1>() <= r) return v;
  Vector mags = v.cwiseAbs();
  std::vector<double> sorted(mags.data(), mags.data() + mags.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - r) / static_cast<double>(j + 1);
    if (j + 1 == sorted.size() || sorted[j + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::max(std::abs(v[i]) - theta, 0.0);
    out[i] = v[i] >= 0.0 ? m : -m;
  }
  return out;
}

/// min 1/2 x'Qx - c'x over the l1 ball by projected gradient descent.
/// Linear convergence when Q is positive definite; returns the optimal value
/// to ~1e-12 on the test instances.
inline double l1_quadratic_pgd(const Matrix& q, const Vector& c, double r,
                               long max_iters = 200000, double tol = 1e-14) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
  const double step = 1.0 / es.eigenvalues().maxCoeff();
  Vector x = Vector::Zero(c.size());
  for (long k = 0; k < max_iters; ++k) {
    const Vector next = project_l1(x - step * (q * x - c), r);
    const double move = (next - x).norm();
    x = next;
    if (move < tol) break;
  }
  return 0.5 * x.dot(q * x) - c.dot(x);
}

/// Same problem for diagonal Q via the KKT conditions: x_i(lambda) is a
/// soft-thresholded c_i / q_i and lambda is bisected until the l1 constraint
/// is tight (lambda = 0 if the unconstrained optimum is interior).
inline double l1_quadratic_diagonal_kkt(const Vector& diag, const Vector& c, double r) {
  const auto x_of = [&](double lambda) {
    Vector x(c.size());
    for (Index i = 0; i < c.size(); ++i) {
      const double mag = std::max(std::abs(c[i]) - lambda, 0.0) / diag[i];
      x[i] = c[i] >= 0.0 ? mag : -mag;
    }
    return x;
  };
  if (x_of(0.0).lpNorm<1>() <= r) {
    const Vector x = x_of(0.0);
    return 0.5 * x.dot(diag.asDiagonal() * x) - c.dot(x);
  }
  double lo = 0.0, hi = c.cwiseAbs().maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (x_of(mid).lpNorm<1>() > r ? lo : hi) = mid;
  }
  const Vector x = x_of(0.5 * (lo + hi));
  return 0.5 * x.dot(diag.asDiagonal() * x) - c.dot(x);
}

/// Brute-force linear minimum over an explicit vertex list.
inline double vertex_min(const std::vector<Vector>& vertices, const Vector& g) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::min(best, g.dot(v));
  return best;
}

inline std::vector<Vector> l1_vertices(Index n, double r) {
  std::vector<Vector> vs;
  for (Index i = 0; i < n; ++i)
    for (double sgn : {1.0, -1.0}) {
      Vector v = Vector::Zero(n);
      v[i] = sgn * r;
      vs.push_back(v);
    }
  return vs;
}

inline std::vector<Vector> simplex_vertices(Index n) {
  std::vector<Vector> vs;
  for (Index i = 0; i < n; ++i) {
    Vector v = Vector::Zero(n);
    v[i] = 1.0;
    vs.push_back(v);
  }
  return vs;
}

inline std::vector<Vector> box_vertices(const Vector& lo, const Vector& hi) {
  const Index n = lo.size();
  std::vector<Vector> vs;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    vs.push_back(v);
  }
  return vs;
}

/// Least-squares slope of y against x.
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace fw::testing

#endif  // FW_TESTS_SUPPORT_HPP
