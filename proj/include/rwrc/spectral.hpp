#pragma once

#include <cmath>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rwrc/conductance_field.hpp"
#include "rwrc/jacobi.hpp"
#include "rwrc/random.hpp"
#include "rwrc/tail_law.hpp"

namespace rwrc {

/// -Delta^omega restricted to B with zero boundary condition. Diagonal
/// entries are the full site totals (boundary bonds act as killing).
template <typename Scalar = double>
struct DirichletOperator {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix matrix;
};

template <typename Scalar = double>
struct SpectralDecomposition {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;                // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // orthonormal columns

  Scalar principal() const { return eigenvalues(0); }
};

template <typename Scalar>
DirichletOperator<Scalar> assemble(const ConductanceField<Scalar>& f, const Domain& dom) {
  require_same_domain(f.domain(), dom);
  DirichletOperator<Scalar> op;
  op.matrix = DirichletOperator<Scalar>::Matrix::Zero(dom.size(), dom.size());
  for (int e = 0; e < dom.edge_count(); ++e) {
    const Edge& edge = dom.edges()[e];
    const Scalar w = f[e];
    op.matrix(edge.inner, edge.inner) += w;
    if (!edge.is_boundary()) {
      op.matrix(edge.outer, edge.outer) += w;
      op.matrix(edge.inner, edge.outer) -= w;
      op.matrix(edge.outer, edge.inner) -= w;
    }
  }
  return op;
}

template <typename Scalar>
SpectralDecomposition<Scalar> eigen(const DirichletOperator<Scalar>& op) {
  auto r = jacobi_eigen(op.matrix);
  return {std::move(r.eigenvalues), std::move(r.eigenvectors)};
}

/// P_z(X_[0,t] in B) for every start z, as sum_i e^{-t lambda_i} v_i(z) (v_i, 1).
/// Entries are clamped to [0, 1]; clamps larger than 1e-10 are reported on
/// std::clog.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> semigroup_nonexit_all(const SpectralDecomposition<Scalar>& sd,
                                                               Scalar t) {
  const auto& v = sd.eigenvectors;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights =
      (-t * sd.eigenvalues.array()).exp().matrix().cwiseProduct(v.colwise().sum().transpose());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p = v * weights;
  for (Eigen::Index z = 0; z < p.size(); ++z) {
    const Scalar clamped = std::min(Scalar(1), std::max(Scalar(0), p(z)));
    if (std::abs(clamped - p(z)) > Scalar(1e-10)) {
      std::clog << "semigroup_nonexit: clamped " << p(z) << " to [0,1] at site " << z << '\n';
    }
    p(z) = clamped;
  }
  return p;
}

template <typename Scalar>
Scalar semigroup_nonexit(const ConductanceField<Scalar>& f, const Domain& dom, Scalar t) {
  if (t == 0) return 1;
  const auto sd = eigen(assemble(f, dom));
  return semigroup_nonexit_all(sd, t)(dom.origin_index());
}

/// log P_0(X_[0,t] in B), factoring out e^{-t lambda_1} so that it stays
/// finite when the probability underflows.
template <typename Scalar>
Scalar log_semigroup_nonexit(const SpectralDecomposition<Scalar>& sd, int start, Scalar t) {
  const auto& v = sd.eigenvectors;
  const Scalar lambda1 = sd.eigenvalues(0);
  Scalar s = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    s += std::exp(-t * (sd.eigenvalues(i) - lambda1)) * v(start, i) * v.col(i).sum();
  }
  if (!(s > 0)) return -std::numeric_limits<Scalar>::infinity();
  return std::min(Scalar(0), -t * lambda1 + std::log(s));
}

template <typename Scalar>
Scalar log_semigroup_nonexit(const ConductanceField<Scalar>& f, const Domain& dom, Scalar t) {
  if (t == 0) return 0;
  return log_semigroup_nonexit(eigen(assemble(f, dom)), dom.origin_index(), t);
}

template <typename Scalar = double>
struct SandwichReport {
  Scalar lambda1 = 0;
  Scalar p_origin = 0;          // P_0(no exit)
  Scalar upper_bound = 0;       // |B|^2 e^{-t lambda_1}
  Scalar heat = 0;              // e^{-t lambda_1}
  Scalar sum_over_starts = 0;   // sum_z P_z(no exit)
  Scalar upper_margin = 0;      // upper_bound - p_origin
  Scalar lower_margin = 0;      // sum_over_starts - heat

  bool holds(Scalar tol = Scalar(1e-10)) const { return upper_margin >= -tol && lower_margin >= -tol; }
};

/// P_0 <= |B|^2 e^{-t lambda_1} and e^{-t lambda_1} <= sum_z P_z.
template <typename Scalar>
SandwichReport<Scalar> sandwich_check(const ConductanceField<Scalar>& f, const Domain& dom, Scalar t) {
  const auto sd = eigen(assemble(f, dom));
  const auto p = semigroup_nonexit_all(sd, t);
  SandwichReport<Scalar> r;
  const Scalar n = dom.size();
  r.lambda1 = sd.principal();
  r.heat = std::exp(-t * r.lambda1);
  r.p_origin = p(dom.origin_index());
  r.upper_bound = n * n * r.heat;
  r.sum_over_starts = p.sum();
  r.upper_margin = r.upper_bound - r.p_origin;
  r.lower_margin = r.sum_over_starts - r.heat;
  return r;
}

enum class TailMethod { MonteCarlo, Quadrature };

struct EigenTailPoint {
  double eps = 0;
  double probability = 0;
  double log_probability = 0;
  /// eps^eta log P, whose small-eps limit is -D L_eta(B)^{eta+1}.
  double scaled_log = 0;
  double standard_error = 0;  // 0 for quadrature
};

/// P(lambda^omega(B) <= eps) for each eps. Quadrature is only available for a
/// single site in d = 1 (lambda = w1 + w2); otherwise `trials` fields are
/// sampled and their principal eigenvalues counted.
std::vector<EigenTailPoint> eigen_tail(const TailLaw<double>& law, const Domain& dom,
                                       std::span<const double> eps_list, TailMethod method, int trials,
                                       Rng& rng);

}  // namespace rwrc
