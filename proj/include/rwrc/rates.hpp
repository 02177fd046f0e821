#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rwrc/conductance_field.hpp"
#include "rwrc/profile.hpp"
#include "rwrc/tail_law.hpp"

namespace rwrc {

/// Donsker-Varadhan rate of the walk in a fixed environment:
/// sum over E_B of phi_xy |g(x) - g(y)|^2.
template <typename Scalar>
Scalar dv_rate_I(const ConductanceField<Scalar>& phi, const ProbabilityProfile<Scalar>& g) {
  require_same_domain(phi.domain(), g.domain());
  Scalar s = 0;
  for (int e = 0; e < phi.size(); ++e) {
    const Scalar gap = g.edge_gap(e);
    s += phi[e] * gap * gap;
  }
  return s;
}

/// Cost of pushing the conductances down to `phi`: D sum phi_xy^{-eta}.
template <typename Scalar>
Scalar env_rate_H(const ConductanceField<Scalar>& phi, const TailLaw<Scalar>& law) {
  return law.dcoef() * phi.weights().array().pow(-law.eta()).sum();
}

/// (1 + 1/eta) (D eta)^{1/(eta+1)}
template <typename Scalar>
Scalar k_const(const TailLaw<Scalar>& law) {
  const Scalar eta = law.eta();
  return (1 + 1 / eta) * std::pow(law.dcoef() * eta, 1 / (eta + 1));
}

/// Exponent 2 eta / (eta + 1) applied to the edge gaps.
template <typename Scalar>
Scalar gap_exponent(Scalar eta) {
  return 2 * eta / (eta + 1);
}

template <typename Scalar>
Scalar joint_rate_J(const ProbabilityProfile<Scalar>& g, const TailLaw<Scalar>& law) {
  const Scalar p = gap_exponent(law.eta());
  Scalar s = 0;
  for (int e = 0; e < g.domain().edge_count(); ++e) s += std::pow(g.edge_gap(e), p);
  return k_const(law) * s;
}

template <typename Scalar = double>
struct InfimumReport {
  Scalar j_value = 0;
  /// min over samples of I_phi + H(phi) - J; negative means a violation.
  Scalar min_gap = 0;
  /// Largest amount by which J exceeded I_phi + H(phi) (0 if none).
  Scalar max_violation = 0;
  /// I + H at the optimal profile with capped edges removed, minus J.
  Scalar optimum_residual = 0;
  /// D M^{-eta} times the number of capped edges (their H contribution).
  Scalar capped_contribution = 0;
  int capped_edges = 0;
  int samples = 0;
};

/// Checks J(g^2) <= I_phi(g^2) + H(phi) for every sampled phi and equality
/// at the optimal profile. Capped edges (g(x) = g(y)) contribute I = 0 and
/// H = D M^{-eta}; that part is reported separately.
template <typename Scalar>
InfimumReport<Scalar> check_infimum_identity(const ProbabilityProfile<Scalar>& g, const TailLaw<Scalar>& law,
                                             std::span<const ConductanceField<Scalar>> phi_samples,
                                             Scalar cap = Scalar(1e6)) {
  InfimumReport<Scalar> r;
  r.j_value = joint_rate_J(g, law);
  r.min_gap = std::numeric_limits<Scalar>::infinity();
  for (const auto& phi : phi_samples) {
    const Scalar gap = dv_rate_I(phi, g) + env_rate_H(phi, law) - r.j_value;
    r.min_gap = std::min(r.min_gap, gap);
    r.max_violation = std::max(r.max_violation, -gap);
  }
  r.samples = static_cast<int>(phi_samples.size());

  const auto opt = optimal_profile(g, law, cap);
  const auto capped = capped_edges(g);
  Scalar i_free = 0;
  Scalar h_free = 0;
  for (int e = 0; e < opt.size(); ++e) {
    if (std::find(capped.begin(), capped.end(), e) != capped.end()) continue;
    const Scalar gap = g.edge_gap(e);
    i_free += opt[e] * gap * gap;
    h_free += law.dcoef() * std::pow(opt[e], -law.eta());
  }
  r.optimum_residual = i_free + h_free - r.j_value;
  r.capped_edges = static_cast<int>(capped.size());
  r.capped_contribution = law.dcoef() * std::pow(cap, -law.eta()) * r.capped_edges;
  return r;
}

}  // namespace rwrc
