#ifndef FW_SETS_HPP
#define FW_SETS_HPP

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fw/types.hpp"

namespace fw {

constexpr double kMembershipTol = 1e-9;

/// Compact convex set exposing a linear minimization oracle. lmo(g) returns
/// an extreme point minimizing <s, g> over the set; ties between optimal
/// extreme points are always broken toward the lowest coordinate index so
/// runs are bit-reproducible. Sets are immutable and freely shareable.
class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  virtual Index dimension() const = 0;
  virtual Vector lmo(const Vector& g) const = 0;
  virtual double diameter() const = 0;
  virtual bool contains(const Vector& x, double tol = kMembershipTol) const = 0;
  virtual std::string id() const = 0;
};

// ---------------------------------------------------------------------------
// Closed-form oracles as free functions; the set classes wrap them.
// ---------------------------------------------------------------------------

/// argmax_i |g_i| with ties to the lowest index.
inline Index argmax_abs(const Vector& g) {
  Index best = 0;
  double best_abs = std::abs(g[0]);
  for (Index i = 1; i < g.size(); ++i) {
    const double a = std::abs(g[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

/// argmin_i g_i with ties to the lowest index.
inline Index argmin_coeff(const Vector& g) {
  Index best = 0;
  for (Index i = 1; i < g.size(); ++i)
    if (g[i] < g[best]) best = i;
  return best;
}

/// l1 ball of radius r: minimizer is the vertex -r sign(g_i*) e_i* with
/// i* = argmax |g_i|. g = 0 lands on +r e_1 via the tie rule (any vertex is
/// optimal there; the estimator can legitimately produce a zero input).
inline Vector lmo_l1(const Vector& g, double r) {
  Vector s = Vector::Zero(g.size());
  const Index i = argmax_abs(g);
  s[i] = g[i] > 0.0 ? -r : r;
  return s;
}

/// Probability simplex: vertex e_i with i = argmin g_i.
inline Vector lmo_simplex(const Vector& g) {
  Vector s = Vector::Zero(g.size());
  s[argmin_coeff(g)] = 1.0;
  return s;
}

/// Axis-aligned box [lo, hi]: per coordinate, the lower bound where g_i > 0,
/// the upper bound where g_i < 0, and the lower bound on g_i = 0.
inline Vector lmo_box(const Vector& g, const Vector& lo, const Vector& hi) {
  Vector s(g.size());
  for (Index i = 0; i < g.size(); ++i) s[i] = g[i] > 0.0 ? lo[i] : (g[i] < 0.0 ? hi[i] : lo[i]);
  return s;
}

/// l2 ball of radius r: -r g / ||g||; g = 0 maps to +r e_1 for determinism.
inline Vector lmo_l2(const Vector& g, double r) {
  const double norm = g.norm();
  if (norm == 0.0) {
    Vector s = Vector::Zero(g.size());
    s[0] = r;
    return s;
  }
  return (-r / norm) * g;
}

// ---------------------------------------------------------------------------

class L1Ball : public FeasibleSet {
 public:
  L1Ball(Index n, double radius) : n_(n), r_(radius) {
    if (n < 1) throw std::invalid_argument("L1Ball: dimension must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("L1Ball: radius must be positive");
  }

  Index dimension() const override { return n_; }
  Vector lmo(const Vector& g) const override { return lmo_l1(g, r_); }
  double diameter() const override { return 2.0 * r_; }  // attained at +-r e_i
  bool contains(const Vector& x, double tol = kMembershipTol) const override {
    return x.size() == n_ && x.lpNorm<1>() <= r_ + tol;
  }
  std::string id() const override { return "l1_ball(r=" + std::to_string(r_) + ")"; }

  double radius() const { return r_; }

 private:
  Index n_;
  double r_;
};

class Simplex : public FeasibleSet {
 public:
  explicit Simplex(Index n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Simplex: dimension must be positive");
  }

  Index dimension() const override { return n_; }
  Vector lmo(const Vector& g) const override { return lmo_simplex(g); }
  double diameter() const override { return n_ > 1 ? std::sqrt(2.0) : 0.0; }
  bool contains(const Vector& x, double tol = kMembershipTol) const override {
    if (x.size() != n_) return false;
    if (x.minCoeff() < -tol) return false;
    return std::abs(x.sum() - 1.0) <= tol;
  }
  std::string id() const override { return "simplex"; }

 private:
  Index n_;
};

class Box : public FeasibleSet {
 public:
  Box(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    require_same_size(lo_, hi_, "Box");
    if ((hi_ - lo_).minCoeff() < 0.0)
      throw std::invalid_argument("Box: requires lo <= hi componentwise");
  }

  static Box unit(Index n) { return Box(Vector::Zero(n), Vector::Ones(n)); }

  Index dimension() const override { return lo_.size(); }
  Vector lmo(const Vector& g) const override { return lmo_box(g, lo_, hi_); }
  double diameter() const override { return (hi_ - lo_).norm(); }
  bool contains(const Vector& x, double tol = kMembershipTol) const override {
    if (x.size() != lo_.size()) return false;
    return (x - lo_).minCoeff() >= -tol && (hi_ - x).minCoeff() >= -tol;
  }
  std::string id() const override { return "box"; }

  const Vector& lower() const { return lo_; }
  const Vector& upper() const { return hi_; }

 private:
  Vector lo_;
  Vector hi_;
};

class L2Ball : public FeasibleSet {
 public:
  L2Ball(Index n, double radius) : n_(n), r_(radius) {
    if (n < 1) throw std::invalid_argument("L2Ball: dimension must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("L2Ball: radius must be positive");
  }

  Index dimension() const override { return n_; }
  Vector lmo(const Vector& g) const override { return lmo_l2(g, r_); }
  double diameter() const override { return 2.0 * r_; }
  bool contains(const Vector& x, double tol = kMembershipTol) const override {
    return x.size() == n_ && x.norm() <= r_ + tol;
  }
  std::string id() const override { return "l2_ball(r=" + std::to_string(r_) + ")"; }

  double radius() const { return r_; }

 private:
  Index n_;
  double r_;
};

/// Cartesian product of component sets. The oracle decomposes blockwise and
/// the squared diameter is the sum of the components' squared diameters.
class ProductSet : public FeasibleSet {
 public:
  explicit ProductSet(std::vector<std::shared_ptr<const FeasibleSet>> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw std::invalid_argument("ProductSet: needs at least one component");
    offsets_.reserve(components_.size());
    Index off = 0;
    double d2 = 0.0;
    for (const auto& c : components_) {
      offsets_.push_back(off);
      off += c->dimension();
      d2 += c->diameter() * c->diameter();
    }
    dim_ = off;
    diameter_ = std::sqrt(d2);
  }

  /// k copies of the same component set.
  static ProductSet power(const std::shared_ptr<const FeasibleSet>& component, Index k) {
    std::vector<std::shared_ptr<const FeasibleSet>> cs(static_cast<std::size_t>(k), component);
    return ProductSet(std::move(cs));
  }

  Index dimension() const override { return dim_; }

  Vector lmo(const Vector& g) const override {
    Vector s(dim_);
    for (std::size_t j = 0; j < components_.size(); ++j) {
      const Index off = offsets_[j];
      const Index len = components_[j]->dimension();
      s.segment(off, len) = components_[j]->lmo(g.segment(off, len));
    }
    return s;
  }

  double diameter() const override { return diameter_; }

  bool contains(const Vector& x, double tol = kMembershipTol) const override {
    if (x.size() != dim_) return false;
    for (std::size_t j = 0; j < components_.size(); ++j) {
      if (!components_[j]->contains(x.segment(offsets_[j], components_[j]->dimension()), tol))
        return false;
    }
    return true;
  }

  std::string id() const override {
    return "product(" + std::to_string(components_.size()) + " x " + components_[0]->id() + ")";
  }

  std::size_t component_count() const { return components_.size(); }

 private:
  std::vector<std::shared_ptr<const FeasibleSet>> components_;
  std::vector<Index> offsets_;
  Index dim_ = 0;
  double diameter_ = 0.0;
};

}  // namespace fw

#endif  // FW_SETS_HPP
