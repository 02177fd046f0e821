#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "rwrc/conductance_field.hpp"
#include "rwrc/walk.hpp"

namespace rwrc {

using PathEvent = std::function<bool(const PathRecord&)>;

/// log of the Radon-Nikodym density of the phi-walk with respect to the
/// psi-walk on the path's time window [0, min(t, exit)]:
///   sum_i [log(phi/psi)(jump edge i) - hold_i (phi_bar - psi_bar)(site before jump i)]
///   - (end - last jump) (phi_bar - psi_bar)(final site),
/// where an exit jump contributes its log ratio and closes the window.
double girsanov_log_density(const PathRecord& path, const Field& phi, const Field& psi);

/// P^phi(F) estimated from psi-paths as the sample mean of Phi_t 1_F.
McEstimate reweighted_probability(const PathEvent& event, const Field& phi, const Field& psi,
                                  const Domain& dom, double t, int n, Rng& rng);

struct ComparisonReport {
  Field phi;
  double eps = 0;
  double factor = 0;        // e^{-4 d eps t}
  double lhs = 0;           // P^phi(F)
  double lhs_se = 0;
  double rhs = 0;           // factor * P^{psi - eps}(F)
  double rhs_se = 0;
  bool violated = false;    // lhs < rhs beyond 3 joint standard errors (or 1e-12 when exact)
  double margin() const { return lhs - rhs; }
};

/// Draws phi uniformly from the band [psi - eps, psi + eps] (unless given)
/// and compares P^phi(F) with e^{-4 d eps t} P^{psi-eps}(F), both by plain
/// Monte Carlo with n paths each. Only fields on E_B are needed when F
/// implies staying in B, which is the setting here.
ComparisonReport comparison_bound_check(const Field& psi, double eps, const PathEvent& event,
                                        const Domain& dom, double t, int n, Rng& rng,
                                        std::optional<Field> phi = std::nullopt);

/// Same comparison for F = {no exit by t}, with both sides from the spectral
/// semigroup.
ComparisonReport comparison_bound_nonexit_exact(const Field& psi, const Field& phi, double eps,
                                                const Domain& dom, double t);

/// Uniform draw from the band psi +- eps.
Field sample_band(const Field& psi, double eps, Rng& rng);

/// Sets of probability measures h^2 on B for the Feynman-Kac bound.
struct PointSet {
  Eigen::VectorXd measure;
};
/// {h^2 : lower <= h^2 <= upper} intersected with the simplex.
struct BoxSet {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  bool contains(const Eigen::VectorXd& m, double tol = 0) const;
};
/// Convex hull of the listed measures.
struct VertexSet {
  std::vector<Eigen::VectorXd> vertices;
};
using ProfileSet = std::variant<PointSet, BoxSet, VertexSet>;

/// sup of sum_x c(x) h^2(x) over the set; -infinity for an empty box.
double sup_linear(const Eigen::VectorXd& c, const ProfileSet& set);

/// (f(0) / min_B f) exp{t sup_{h^2 in A} sum_x (Delta^phi f / f)(x) h^2(x)},
/// an upper bound for P_0^phi(l_t / t in A). `f_test` holds the values of f on
/// B (f = 0 outside).
double feynman_kac_upper_bound(const Eigen::VectorXd& f_test, const Field& phi, const Domain& dom,
                               const ProfileSet& set, double t);

}  // namespace rwrc
