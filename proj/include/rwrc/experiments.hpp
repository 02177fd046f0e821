#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rwrc/conductance_field.hpp"
#include "rwrc/config.hpp"
#include "rwrc/variational.hpp"

namespace rwrc {

/// Annealed non-exit probability <P_0^omega(X_[0,t] in B)> at one time.
struct AnnealedEstimate {
  double t = 0;
  double estimate = 0;
  double log_estimate = 0;
  double standard_error = 0;
  /// t^{-eta/(eta+1)} log(estimate); 0 at t = 0.
  double rescaled = 0;
  std::string method;
  double effective_sample_size = 0;
  int samples = 0;
};

/// Single-site domain only: <e^{-t sum omega}> is the 2d-th power of the
/// Laplace transform of the tail law, evaluated in log space by quadrature.
AnnealedEstimate annealed_nonexit_quadrature(const TailLaw<double>& law, const Domain& dom, double t);

/// Fields drawn from the prior, inner probability from the spectral semigroup.
AnnealedEstimate annealed_nonexit_mc(const TailLaw<double>& law, const Domain& dom, double t, int n,
                                     Rng& rng);

/// Per-edge proposal for importance sampling of fields: w = scale * W with
/// W from the tail law. A scale of 1 means the prior itself.
struct FieldProposal {
  Domain domain;
  Eigen::VectorXd scales;

  Field sample(const TailLaw<double>& law, Rng& rng) const;
  double log_density(const Field& f, const TailLaw<double>& law) const;
};

/// Proposal whose medians sit at t^{-r} phi^(g) on edges where g varies and
/// which keeps the prior on capped edges (g(x) = g(y)).
FieldProposal tilted_proposal(const ProbabilityProfile<double>& g, const TailLaw<double>& law, double t,
                              double r);

/// Importance-sampled annealed non-exit probability. The proposal is
/// centred on t^{-r} phi^(g*) for the variational minimizer g* (computed
/// here unless supplied). Throws DegenerateWeights when the effective sample
/// size drops below 10.
AnnealedEstimate annealed_nonexit_is(const TailLaw<double>& law, const Domain& dom, double t, int n,
                                     double r, Rng& rng,
                                     const std::optional<ProbabilityProfile<double>>& minimizer = std::nullopt,
                                     const SolverOptions& solver = {});

struct TauberianPoint {
  double t = 0;
  double value = 0;   // (1/t) log <exp(-t^{(1+eta)/eta} omega M)>
  double target = 0;  // -K_{eta,D} M^{eta/(1+eta)}
};

std::vector<TauberianPoint> tauberian_check(const TailLaw<double>& law, double M,
                                            const std::vector<double>& t_list);

struct LdpRow {
  double t = 0;
  double delta = 0;
  double estimate = 0;
  double standard_error = 0;
  double rescaled = 0;  // t^{-eta/(eta+1)} log(estimate)
  double slack = 0;     // spread of `rescaled` across the delta values at this t
  bool lower_bound_ok = false;
};

struct LdpReport {
  double minus_j = 0;  // -J(g^2)
  std::vector<LdpRow> rows;
};

struct LdpSettings {
  std::vector<double> times;
  std::vector<double> deltas;
  int fields = 1000;
  int paths = 200;
  double r = 0.5;
};

/// Annealed probability of {l_t/t within delta of g^2 (Euclidean), no exit},
/// importance-sampled over fields near t^{-r} phi^(g). The inner quenched
/// probability is exact (spectral) when the ball covers all of M_1(B) and
/// a path average otherwise.
LdpReport ldp_point_check(const TailLaw<double>& law, const ProbabilityProfile<double>& g,
                          const LdpSettings& settings, Rng& rng);

struct GirsanovReport {
  double mean = 0;  // psi-sample mean of Phi_t
  double standard_error = 0;
  double cocycle_error = 0;        // max |log Phi(phi,psi) + log Phi(psi,chi) - log Phi(phi,chi)|
  double antisymmetry_error = 0;   // max |log Phi(phi,psi) + log Phi(psi,phi)|
  int paths = 0;
};

/// Martingale normalisation and pathwise identities of the path density,
/// from n walks under psi.
GirsanovReport girsanov_check(const Field& phi, const Field& psi, const Field& chi, const Domain& dom,
                              double t, int n, Rng& rng);

/// Uniform field on [lo, hi]^{E_B}.
Field uniform_field(const Domain& dom, double lo, double hi, Rng& rng);

}  // namespace rwrc
