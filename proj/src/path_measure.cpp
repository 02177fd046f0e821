#include "rwrc/path_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rwrc/spectral.hpp"

namespace rwrc {

double girsanov_log_density(const PathRecord& path, const Field& phi, const Field& psi) {
  require_same_domain(phi.domain(), psi.domain(), ErrorCode::FieldMismatch);
  auto rate_gap = [&](int site) { return phi.site_total(site) - psi.site_total(site); };

  double log_phi = 0;
  double last = 0;
  for (int i = 0; i < path.jump_count(); ++i) {
    const int e = path.jump_edges[i];
    log_phi += std::log(phi[e] / psi[e]) - (path.jump_times[i] - last) * rate_gap(path.sites[i]);
    last = path.jump_times[i];
  }
  if (path.exited) {
    log_phi += std::log(phi[path.exit_edge] / psi[path.exit_edge]);
  }
  log_phi -= (path.end_time() - last) * rate_gap(path.final_site());
  return log_phi;
}

McEstimate reweighted_probability(const PathEvent& event, const Field& phi, const Field& psi,
                                  const Domain& dom, double t, int n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one trial");
  require_same_domain(phi.domain(), psi.domain(), ErrorCode::FieldMismatch);
  double sum = 0;
  double sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const PathRecord path = simulate(psi, dom, t, rng);
    if (!event(path)) continue;
    const double w = std::exp(girsanov_log_density(path, phi, psi));
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, std::sqrt(var / n), n};
}

Field sample_band(const Field& psi, double eps, Rng& rng) {
  Eigen::VectorXd w(psi.size());
  for (int e = 0; e < psi.size(); ++e) w(e) = psi[e] - eps + 2 * eps * uniform_open(rng);
  return {psi.domain(), std::move(w)};
}

namespace {

void check_band(const Field& psi, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveArgument, "eps must be positive");
  if (!(eps < psi.min_weight())) {
    throw Error(ErrorCode::EpsilonTooLarge, "eps must be below the smallest weight of psi");
  }
}

Field shifted(const Field& psi, double eps) {
  return {psi.domain(), (psi.weights().array() - eps).matrix()};
}

}  // namespace

ComparisonReport comparison_bound_check(const Field& psi, double eps, const PathEvent& event,
                                        const Domain& dom, double t, int n, Rng& rng,
                                        std::optional<Field> phi) {
  check_band(psi, eps);
  Field target = phi ? *phi : sample_band(psi, eps, rng);
  require_same_domain(target.domain(), psi.domain(), ErrorCode::FieldMismatch);
  const Field lowered = shifted(psi, eps);

  auto estimate = [&](const Field& f) {
    long hits = 0;
    for (int i = 0; i < n; ++i)
      if (event(simulate(f, dom, t, rng))) ++hits;
    const double p = static_cast<double>(hits) / n;
    return McEstimate{p, std::sqrt(p * (1 - p) / n), n};
  };

  ComparisonReport r{std::move(target)};
  r.eps = eps;
  r.factor = std::exp(-4.0 * dom.dimension() * eps * t);
  const McEstimate lhs = estimate(r.phi);
  const McEstimate low = estimate(lowered);
  r.lhs = lhs.estimate;
  r.lhs_se = lhs.standard_error;
  r.rhs = r.factor * low.estimate;
  r.rhs_se = r.factor * low.standard_error;
  r.violated = r.lhs < r.rhs - 3.0 * std::hypot(r.lhs_se, r.rhs_se);
  return r;
}

ComparisonReport comparison_bound_nonexit_exact(const Field& psi, const Field& phi, double eps,
                                                const Domain& dom, double t) {
  check_band(psi, eps);
  if (((phi.weights() - psi.weights()).array().abs() > eps * (1 + 1e-12)).any()) {
    throw Error(ErrorCode::ArgumentOutOfRange, "phi lies outside the band psi +- eps");
  }
  ComparisonReport r{phi};
  r.eps = eps;
  r.factor = std::exp(-4.0 * dom.dimension() * eps * t);
  r.lhs = semigroup_nonexit(phi, dom, t);
  r.rhs = r.factor * semigroup_nonexit(shifted(psi, eps), dom, t);
  r.violated = r.lhs < r.rhs - 1e-12;
  return r;
}

bool BoxSet::contains(const Eigen::VectorXd& m, double tol) const {
  return ((m - lower).array() >= -tol).all() && ((upper - m).array() >= -tol).all();
}

double sup_linear(const Eigen::VectorXd& c, const ProfileSet& set) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointSet>) {
          if (s.measure.size() != c.size()) throw Error(ErrorCode::UnsupportedSetShape, "point has wrong size");
          return c.dot(s.measure);
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          if (s.lower.size() != c.size() || s.upper.size() != c.size()) {
            throw Error(ErrorCode::UnsupportedSetShape, "box has wrong size");
          }
          const Eigen::VectorXd lo = s.lower.cwiseMax(0.0);
          const Eigen::VectorXd hi = s.upper.cwiseMin(1.0);
          double mass = 1.0 - lo.sum();
          if ((lo.array() > hi.array()).any() || mass < -1e-15 || hi.sum() < 1.0 - 1e-15) {
            return -std::numeric_limits<double>::infinity();
          }
          // Fractional knapsack: start at the lower corner and pour the
          // remaining mass into the largest coefficients first.
          std::vector<int> order(c.size());
          std::iota(order.begin(), order.end(), 0);
          std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return c(i) > c(j); });
          double value = c.dot(lo);
          for (int i : order) {
            if (mass <= 0) break;
            const double add = std::min(mass, hi(i) - lo(i));
            value += c(i) * add;
            mass -= add;
          }
          return value;
        } else {
          if (s.vertices.empty()) throw Error(ErrorCode::UnsupportedSetShape, "empty vertex list");
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& v : s.vertices) {
            if (v.size() != c.size()) throw Error(ErrorCode::UnsupportedSetShape, "vertex has wrong size");
            best = std::max(best, c.dot(v));
          }
          return best;
        }
      },
      set);
}

double feynman_kac_upper_bound(const Eigen::VectorXd& f_test, const Field& phi, const Domain& dom,
                               const ProfileSet& set, double t) {
  require_same_domain(phi.domain(), dom);
  if (f_test.size() != dom.size() || !((f_test.array() > 0).all())) {
    throw Error(ErrorCode::ArgumentOutOfRange, "test function must be positive on every site of B");
  }
  // (Delta^phi f)(x) / f(x) with f = 0 outside B.
  Eigen::VectorXd ratio(dom.size());
  for (int x = 0; x < dom.size(); ++x) {
    double lap = 0;
    for (int e : dom.incident_edges(x)) {
      const int y = dom.across(e, x);
      lap += phi[e] * ((y < 0 ? 0.0 : f_test(y)) - f_test(x));
    }
    ratio(x) = lap / f_test(x);
  }
  const double sup = sup_linear(ratio, set);
  if (sup == -std::numeric_limits<double>::infinity()) return 0.0;
  const double prefactor = f_test(dom.origin_index()) / f_test.minCoeff();
  return t == 0 ? prefactor : prefactor * std::exp(t * sup);
}

}  // namespace rwrc
