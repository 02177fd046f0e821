#include "rwrc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rwrc/path_measure.hpp"
#include "rwrc/quadrature.hpp"
#include "rwrc/rates.hpp"
#include "rwrc/spectral.hpp"
#include "rwrc/walk.hpp"

namespace rwrc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sample mean of exp(log_w) without leaving log space.
struct WeightSummary {
  double log_mean = kNegInf;
  double relative_error = 0;  // standard error / mean
  double ess = 0;
};

WeightSummary summarize(const std::vector<double>& log_w) {
  WeightSummary s;
  const double n = static_cast<double>(log_w.size());
  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (top == kNegInf) return s;
  double s1 = 0;
  double s2 = 0;
  for (double lw : log_w) {
    const double w = std::exp(lw - top);
    s1 += w;
    s2 += w * w;
  }
  const double mean = s1 / n;
  const double var = n > 1 ? std::max(0.0, (s2 / n - mean * mean) * n / (n - 1)) : 0.0;
  s.log_mean = top + std::log(mean);
  s.relative_error = std::sqrt(var / n) / mean;
  s.ess = s1 * s1 / s2;
  return s;
}

double rescale(double log_estimate, double t, double eta) {
  if (log_estimate == 0) return 0;
  return std::pow(t, -eta / (eta + 1)) * log_estimate;
}

AnnealedEstimate from_summary(double t, const WeightSummary& s, double eta, const char* method, int n) {
  AnnealedEstimate a;
  a.t = t;
  a.method = method;
  a.samples = n;
  a.log_estimate = s.log_mean;
  a.estimate = std::exp(s.log_mean);
  a.standard_error = a.estimate * s.relative_error;
  a.rescaled = rescale(s.log_mean, t, eta);
  a.effective_sample_size = s.ess;
  return a;
}

AnnealedEstimate certain(double t, const char* method, int n) {
  AnnealedEstimate a;
  a.t = t;
  a.estimate = 1;
  a.method = method;
  a.samples = n;
  a.effective_sample_size = n;
  return a;
}

}  // namespace

AnnealedEstimate annealed_nonexit_quadrature(const TailLaw<double>& law, const Domain& dom, double t) {
  if (dom.size() != 1) {
    throw Error(ErrorCode::UnsupportedDomain, "quadrature route needs a single-site domain");
  }
  if (!(t >= 0)) throw Error(ErrorCode::ArgumentOutOfRange, "t must be nonnegative");
  if (t == 0) return certain(t, "quadrature", 0);
  AnnealedEstimate a;
  a.t = t;
  a.method = "quadrature";
  a.log_estimate = dom.edge_count() * log_laplace_transform(law, t);
  a.estimate = std::exp(a.log_estimate);
  a.rescaled = rescale(a.log_estimate, t, law.eta());
  return a;
}

AnnealedEstimate annealed_nonexit_mc(const TailLaw<double>& law, const Domain& dom, double t, int n,
                                     Rng& rng) {
  if (n < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one sample");
  if (t == 0) return certain(t, "mc", n);
  std::vector<double> log_w;
  log_w.reserve(n);
  for (int i = 0; i < n; ++i) log_w.push_back(log_semigroup_nonexit(sample_field(law, dom, rng), dom, t));
  return from_summary(t, summarize(log_w), law.eta(), "mc", n);
}

Field FieldProposal::sample(const TailLaw<double>& law, Rng& rng) const {
  Eigen::VectorXd w(scales.size());
  for (Eigen::Index e = 0; e < scales.size(); ++e) w(e) = scales(e) * law.sample(rng);
  return {domain, std::move(w)};
}

double FieldProposal::log_density(const Field& f, const TailLaw<double>& law) const {
  double s = 0;
  for (Eigen::Index e = 0; e < scales.size(); ++e) {
    s += law.log_density(f[static_cast<int>(e)] / scales(e)) - std::log(scales(e));
  }
  return s;
}

FieldProposal tilted_proposal(const ProbabilityProfile<double>& g, const TailLaw<double>& law, double t,
                              double r) {
  if (!(t > 0)) throw Error(ErrorCode::NonPositiveArgument, "tilted proposal needs t > 0");
  // The cap value is irrelevant here: capped edges keep the prior.
  const Field target = optimal_profile(g, law, 1.0);
  const double shrink = std::pow(t, -r) / law.median();
  FieldProposal q{g.domain(), Eigen::VectorXd::Ones(target.size())};
  for (int e = 0; e < target.size(); ++e) {
    if (g.edge_gap(e) > 0) q.scales(e) = shrink * target[e];
  }
  return q;
}

AnnealedEstimate annealed_nonexit_is(const TailLaw<double>& law, const Domain& dom, double t, int n,
                                     double r, Rng& rng,
                                     const std::optional<ProbabilityProfile<double>>& minimizer,
                                     const SolverOptions& solver) {
  if (n < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one sample");
  if (!(t >= 0)) throw Error(ErrorCode::ArgumentOutOfRange, "t must be nonnegative");
  if (t == 0) return certain(t, "is", n);
  const ProbabilityProfile<double> g = minimizer ? *minimizer : solve_L(dom, law.eta(), solver).minimizer;
  require_same_domain(g.domain(), dom);
  const FieldProposal q = tilted_proposal(g, law, t, r);

  std::vector<double> log_w;
  log_w.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Field f = q.sample(law, rng);
    log_w.push_back(log_prior_density(f, law) - q.log_density(f, law) + log_semigroup_nonexit(f, dom, t));
  }
  const WeightSummary s = summarize(log_w);
  if (s.ess < 10) {
    throw Error(ErrorCode::DegenerateWeights,
                "effective sample size " + std::to_string(s.ess) + " < 10 at t = " + std::to_string(t));
  }
  return from_summary(t, s, law.eta(), "is", n);
}

std::vector<TauberianPoint> tauberian_check(const TailLaw<double>& law, double M,
                                            const std::vector<double>& t_list) {
  if (!(M > 0)) throw Error(ErrorCode::NonPositiveArgument, "M must be positive");
  const double eta = law.eta();
  const double target = -k_const(law) * std::pow(M, eta / (1 + eta));
  std::vector<TauberianPoint> out;
  for (double t : t_list) {
    if (!(t > 0)) throw Error(ErrorCode::NonPositiveArgument, "t must be positive");
    const double s = std::pow(t, (1 + eta) / eta) * M;
    out.push_back({t, log_laplace_transform(law, s) / t, target});
  }
  return out;
}

namespace {

// Walk on the interior bonds of B only. Killing through boundary bonds is
// accounted for afterwards by the Feynman-Kac weight exp(-sum_x kappa(x) l(x)),
// which keeps the weights bounded by one instead of relying on rare survivors.
struct ReflectedWalker {
  const Field& field;
  const Domain& dom;
  Eigen::VectorXd interior_total;
  Eigen::VectorXd killing;

  ReflectedWalker(const Field& f, const Domain& d)
      : field(f), dom(d), interior_total(Eigen::VectorXd::Zero(d.size())), killing(Eigen::VectorXd::Zero(d.size())) {
    for (int e = 0; e < d.edge_count(); ++e) {
      const Edge& edge = d.edges()[e];
      if (edge.is_boundary()) {
        killing(edge.inner) += f[e];
      } else {
        interior_total(edge.inner) += f[e];
        interior_total(edge.outer) += f[e];
      }
    }
  }

  Eigen::VectorXd local_times(double t, Rng& rng) const {
    Eigen::VectorXd occ = Eigen::VectorXd::Zero(dom.size());
    int here = dom.origin_index();
    double now = 0;
    while (interior_total(here) > 0) {
      const double hold = -std::log(uniform_open(rng)) / interior_total(here);
      if (now + hold > t) break;
      occ(here) += hold;
      now += hold;
      double target = uniform_open(rng) * interior_total(here);
      int next = -1;
      for (int e : dom.incident_edges(here)) {
        const int y = dom.across(e, here);
        if (y < 0) continue;
        next = y;
        target -= field[e];
        if (target < 0) break;
      }
      here = next;
    }
    occ(here) += t - now;
    return occ;
  }
};

}  // namespace

LdpReport ldp_point_check(const TailLaw<double>& law, const ProbabilityProfile<double>& g,
                          const LdpSettings& settings, Rng& rng) {
  if (settings.fields < 1 || settings.paths < 1) {
    throw Error(ErrorCode::ArgumentOutOfRange, "need at least one field and one path");
  }
  for (double d : settings.deltas)
    if (!(d > 0)) throw Error(ErrorCode::NonPositiveArgument, "delta must be positive");
  const Domain& dom = g.domain();
  const Eigen::VectorXd target = g.measure();
  LdpReport report;
  report.minus_j = -joint_rate_J(g, law);
  // Euclidean diameter of the probability simplex.
  const double diameter = std::sqrt(2.0);
  bool need_paths = false;
  for (double d : settings.deltas) need_paths = need_paths || d < diameter;
  const std::size_t nd = settings.deltas.size();

  for (double t : settings.times) {
    if (!(t > 0)) throw Error(ErrorCode::NonPositiveArgument, "t must be positive");
    const FieldProposal q = tilted_proposal(g, law, t, settings.r);
    std::vector<std::vector<double>> log_w(nd);
    std::vector<std::vector<double>> inner(nd, std::vector<double>(settings.paths));
    for (int i = 0; i < settings.fields; ++i) {
      const Field f = q.sample(law, rng);
      const double log_ratio = log_prior_density(f, law) - q.log_density(f, law);
      if (need_paths) {
        const ReflectedWalker walker(f, dom);
        for (int k = 0; k < settings.paths; ++k) {
          const Eigen::VectorXd occ = walker.local_times(t, rng);
          const double log_survive = -walker.killing.dot(occ);
          const double dist = (occ / t - target).norm();
          for (std::size_t j = 0; j < nd; ++j) inner[j][k] = dist < settings.deltas[j] ? log_survive : kNegInf;
        }
      }
      for (std::size_t j = 0; j < nd; ++j) {
        const double log_inner = settings.deltas[j] >= diameter ? log_semigroup_nonexit(f, dom, t)
                                                                : summarize(inner[j]).log_mean;
        log_w[j].push_back(log_ratio + log_inner);
      }
    }
    std::vector<LdpRow> rows;
    for (std::size_t j = 0; j < nd; ++j) {
      const WeightSummary s = summarize(log_w[j]);
      LdpRow row;
      row.t = t;
      row.delta = settings.deltas[j];
      row.estimate = std::exp(s.log_mean);
      row.standard_error = row.estimate * s.relative_error;
      row.rescaled = s.log_mean == kNegInf ? kNegInf : std::pow(t, -law.eta() / (law.eta() + 1)) * s.log_mean;
      rows.push_back(row);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = kNegInf;
    for (const auto& row : rows) {
      lo = std::min(lo, row.rescaled);
      hi = std::max(hi, row.rescaled);
    }
    const double slack = (std::isfinite(lo) && std::isfinite(hi)) ? hi - lo : 0.0;
    for (auto& row : rows) {
      row.slack = slack;
      row.lower_bound_ok = std::isfinite(row.rescaled) && row.rescaled >= report.minus_j - slack;
      report.rows.push_back(row);
    }
  }
  return report;
}

GirsanovReport girsanov_check(const Field& phi, const Field& psi, const Field& chi, const Domain& dom,
                              double t, int n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one path");
  GirsanovReport r;
  r.paths = n;
  double sum = 0;
  double sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const PathRecord path = simulate(psi, dom, t, rng);
    const double phi_psi = girsanov_log_density(path, phi, psi);
    const double psi_chi = girsanov_log_density(path, psi, chi);
    const double phi_chi = girsanov_log_density(path, phi, chi);
    const double psi_phi = girsanov_log_density(path, psi, phi);
    r.cocycle_error = std::max(r.cocycle_error, std::abs(phi_psi + psi_chi - phi_chi));
    r.antisymmetry_error = std::max(r.antisymmetry_error, std::abs(phi_psi + psi_phi));
    const double w = std::exp(phi_psi);
    sum += w;
    sum2 += w * w;
  }
  r.mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum2 - n * r.mean * r.mean) / (n - 1)) : 0.0;
  r.standard_error = std::sqrt(var / n);
  return r;
}

Field uniform_field(const Domain& dom, double lo, double hi, Rng& rng) {
  Eigen::VectorXd w(dom.edge_count());
  for (int e = 0; e < dom.edge_count(); ++e) w(e) = lo + (hi - lo) * uniform_open(rng);
  return {dom, std::move(w)};
}

}  // namespace rwrc
