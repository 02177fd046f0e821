#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "rwrc/domain.hpp"
#include "rwrc/errors.hpp"

namespace rwrc {

/// Nonnegative unit-norm profile g on B (zero outside); g^2 is a probability
/// measure on B.
template <typename Scalar = double>
class ProbabilityProfile {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ProbabilityProfile(Domain dom, Vector values) : domain_(std::move(dom)), values_(std::move(values)) {
    if (values_.size() != domain_.size()) {
      throw Error(ErrorCode::InvalidProfile, "profile has " + std::to_string(values_.size()) +
                                                 " entries for " + std::to_string(domain_.size()) +
                                                 " sites");
    }
    if (!values_.allFinite() || (values_.array() < 0).any()) {
      throw Error(ErrorCode::InvalidProfile, "profile entries must be finite and nonnegative");
    }
    if (std::abs(values_.norm() - Scalar(1)) > Scalar(1e-12)) {
      throw Error(ErrorCode::InvalidProfile, "profile must have unit l2 norm");
    }
  }

  /// |v| / ||v||.
  static ProbabilityProfile normalized(Domain dom, const Vector& v) {
    Vector a = v.cwiseAbs();
    const Scalar n = a.norm();
    if (!(n > 0)) throw Error(ErrorCode::InvalidProfile, "cannot normalize a zero vector");
    return ProbabilityProfile(std::move(dom), a / n);
  }

  static ProbabilityProfile uniform(Domain dom) {
    const auto n = dom.size();
    return ProbabilityProfile(std::move(dom), Vector::Constant(n, Scalar(1) / std::sqrt(Scalar(n))));
  }

  /// Point mass at the origin.
  static ProbabilityProfile origin_mass(Domain dom) {
    Vector v = Vector::Zero(dom.size());
    v(dom.origin_index()) = 1;
    return ProbabilityProfile(std::move(dom), std::move(v));
  }

  const Domain& domain() const { return domain_; }
  const Vector& values() const { return values_; }
  Scalar operator()(int site) const { return values_(site); }
  int size() const { return static_cast<int>(values_.size()); }

  /// The measure g^2 on B.
  Vector measure() const { return values_.array().square().matrix(); }

  /// |g(y) - g(x)| across an edge of E_B, with g = 0 at exterior endpoints.
  Scalar edge_gap(int edge) const { return edge_gap(domain_, values_, edge); }

  template <typename Derived>
  static Scalar edge_gap(const Domain& dom, const Eigen::MatrixBase<Derived>& g, int edge) {
    const Edge& e = dom.edges()[edge];
    const Scalar outer = e.is_boundary() ? Scalar(0) : g(e.outer);
    return std::abs(g(e.inner) - outer);
  }

 private:
  Domain domain_;
  Vector values_;
};

}  // namespace rwrc
