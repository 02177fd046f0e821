#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "rwrc/profile.hpp"
#include "rwrc/rates.hpp"

namespace rwrc {

/// sum over E_B of |g(y) - g(x)|^{2 eta/(eta+1)} for an arbitrary (possibly
/// signed, unnormalised) vector of site values, zero outside B.
template <typename Derived>
typename Derived::Scalar objective(const Domain& dom, const Eigen::MatrixBase<Derived>& g,
                                   typename Derived::Scalar eta) {
  using Scalar = typename Derived::Scalar;
  const Scalar p = gap_exponent(eta);
  Scalar s = 0;
  for (int e = 0; e < dom.edge_count(); ++e) {
    s += std::pow(ProbabilityProfile<Scalar>::edge_gap(dom, g, e), p);
  }
  return s;
}

template <typename Scalar>
Scalar objective(const ProbabilityProfile<Scalar>& g, Scalar eta) {
  return objective(g.domain(), g.values(), eta);
}

struct SolverOptions {
  int restarts = 32;              // random starts, in addition to the uniform profile
  double kappa_initial = 1e-1;    // smoothing level of the first stage
  double kappa_min = 1e-9;        // last smoothing level
  double kappa_factor = 0.1;      // kappa shrink per stage
  int max_iterations = 20000;     // per stage
  double tolerance = 1e-13;       // relative objective change that ends a stage
  double tie_tolerance = 1e-9;    // values closer than this count as equal optima
  std::uint64_t seed = 0x5eed;
};

struct SolverDiagnostics {
  long iterations = 0;
  double kappa_final = 0;
  int restarts = 0;
  int converged_restarts = 0;
  long evaluations = 0;  // brute force: grid points visited
};

struct VariationalResult {
  ProbabilityProfile<double> minimizer;
  double value = 0;
  SolverDiagnostics diagnostics;
  /// Every distinct profile found at the optimal value (includes `minimizer`).
  std::vector<ProbabilityProfile<double>> minimizers;
};

/// Exhaustive search for L_eta(B) on domains with at most four sites.
///
/// The nonnegative orthant of the unit sphere is gridded in hyperspherical
/// angles once per partition of B into blocks of tied values, so profiles on
/// the kinks g(x) = g(y) are represented exactly; each best grid point is
/// then refined by repeatedly zooming the grid around it.
VariationalResult brute_force_L(const Domain& dom, double eta, int grid_points_per_axis = 100);

/// Multi-start projected gradient descent on the sphere with smoothing
/// continuation: |u|^p is replaced by (u^2 + kappa^2)^{p/2} and kappa is
/// driven down geometrically to `kappa_min`. Near-ties are snapped at the end.
/// Throws NonConvergence if no restart reaches stationarity.
VariationalResult solve_L(const Domain& dom, double eta, const SolverOptions& opts = {});

nlohmann::json result_to_json(const VariationalResult& r, double eta);

}  // namespace rwrc
