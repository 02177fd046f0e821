#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "rwrc/domain.hpp"
#include "rwrc/errors.hpp"
#include "rwrc/profile.hpp"
#include "rwrc/random.hpp"
#include "rwrc/tail_law.hpp"

namespace rwrc {

/// Strictly positive weights on E_B in canonical edge order. Edges outside
/// E_B are never represented: the walk is killed when it leaves B.
template <typename Scalar = double>
class ConductanceField {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ConductanceField(Domain dom, Vector weights) : domain_(std::move(dom)), weights_(std::move(weights)) {
    if (weights_.size() != domain_.edge_count()) {
      throw Error(ErrorCode::FieldMismatch, "field has " + std::to_string(weights_.size()) +
                                                " weights for " +
                                                std::to_string(domain_.edge_count()) + " edges");
    }
    if (!weights_.allFinite() || (weights_.array() <= 0).any()) {
      throw Error(ErrorCode::NonPositiveWeight, "conductances must be finite and positive");
    }
  }

  static ConductanceField constant(Domain dom, Scalar value) {
    const auto n = dom.edge_count();
    return ConductanceField(std::move(dom), Vector::Constant(n, value));
  }

  const Domain& domain() const { return domain_; }
  const Vector& weights() const { return weights_; }
  Scalar operator[](int edge) const { return weights_(edge); }
  int size() const { return static_cast<int>(weights_.size()); }
  Scalar min_weight() const { return weights_.minCoeff(); }

  /// Total conductance at a site, sum over all 2d incident bonds.
  Scalar site_total(int site) const {
    Scalar s = 0;
    for (int e : domain_.incident_edges(site)) s += weights_(e);
    return s;
  }

  Vector site_totals() const {
    Vector out(domain_.size());
    for (int x = 0; x < domain_.size(); ++x) out(x) = site_total(x);
    return out;
  }

 private:
  Domain domain_;
  Vector weights_;
};

using Field = ConductanceField<double>;

inline void require_same_domain(const Domain& a, const Domain& b,
                                ErrorCode code = ErrorCode::DomainMismatch) {
  if (!(a == b)) throw Error(code, "objects live on different domains");
}

/// One i.i.d. draw per edge of E_B, in canonical edge order.
template <typename Scalar>
ConductanceField<Scalar> sample_field(const TailLaw<Scalar>& law, const Domain& dom, Rng& rng) {
  typename ConductanceField<Scalar>::Vector w(dom.edge_count());
  for (int e = 0; e < dom.edge_count(); ++e) w(e) = law.sample(rng);
  return {dom, std::move(w)};
}

template <typename Scalar>
ConductanceField<Scalar> scale_field(const ConductanceField<Scalar>& f, Scalar c) {
  if (!(c > 0) || !std::isfinite(c)) throw Error(ErrorCode::NonPositiveScale, "scale must be positive");
  return {f.domain(), f.weights() * c};
}

/// The conductance profile that minimises I_phi(g^2) + H(phi) edge by edge:
/// (D eta)^{1/(eta+1)} |g(y)-g(x)|^{-2/(eta+1)}, and `cap` where g(x) = g(y).
template <typename Scalar>
ConductanceField<Scalar> optimal_profile(const ProbabilityProfile<Scalar>& g, const TailLaw<Scalar>& law,
                                         Scalar cap) {
  if (!(cap > 0)) throw Error(ErrorCode::NonPositiveArgument, "cap M must be positive");
  const Domain& dom = g.domain();
  const Scalar eta = law.eta();
  const Scalar prefactor = std::pow(law.dcoef() * eta, Scalar(1) / (eta + 1));
  typename ConductanceField<Scalar>::Vector w(dom.edge_count());
  for (int e = 0; e < dom.edge_count(); ++e) {
    const Scalar gap = g.edge_gap(e);
    w(e) = gap > 0 ? prefactor * std::pow(gap, Scalar(-2) / (eta + 1)) : cap;
  }
  return {dom, std::move(w)};
}

/// Edges on which optimal_profile used the cap.
template <typename Scalar>
std::vector<int> capped_edges(const ProbabilityProfile<Scalar>& g) {
  std::vector<int> out;
  for (int e = 0; e < g.domain().edge_count(); ++e)
    if (!(g.edge_gap(e) > 0)) out.push_back(e);
  return out;
}

template <typename Scalar>
Scalar log_prior_density(const ConductanceField<Scalar>& f, const TailLaw<Scalar>& law) {
  Scalar s = 0;
  for (int e = 0; e < f.size(); ++e) s += law.log_density(f[e]);
  return s;
}

nlohmann::json field_to_json(const ConductanceField<double>& f);
ConductanceField<double> field_from_json(const nlohmann::json& j);

}  // namespace rwrc
