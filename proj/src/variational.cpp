#include "rwrc/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "rwrc/random.hpp"

namespace rwrc {

namespace {

using Eigen::VectorXd;

constexpr double kHalfPi = std::numbers::pi / 2;

// All set partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> labels(n, 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      labels[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n > 0) {
    labels[0] = 0;
    rec(rec, 1, 1);
  }
  return out;
}

// Point on the nonnegative unit sphere in k = angles.size() + 1 dimensions.
VectorXd sphere_point(const VectorXd& angles) {
  const Eigen::Index k = angles.size() + 1;
  VectorXd w(k);
  double sines = 1;
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    w(i) = sines * std::cos(angles(i));
    sines *= std::sin(angles(i));
  }
  w(k - 1) = sines;
  return w;
}

class PartitionSearch {
 public:
  PartitionSearch(const Domain& dom, double eta, std::vector<int> labels)
      : dom_(dom), eta_(eta), labels_(std::move(labels)) {
    blocks_ = *std::max_element(labels_.begin(), labels_.end()) + 1;
    root_size_ = VectorXd::Zero(blocks_);
    for (int b : labels_) root_size_(b) += 1;
    root_size_ = root_size_.cwiseSqrt();
  }

  int angles() const { return blocks_ - 1; }

  VectorXd profile(const VectorXd& theta) const {
    const VectorXd w = sphere_point(theta);
    VectorXd g(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) g(i) = w(labels_[i]) / root_size_(labels_[i]);
    return g;
  }

  double value(const VectorXd& theta) const { return objective(dom_, profile(theta), eta_); }

  // Best point on the tensor grid lo + (hi - lo) * j / (m - 1), j = 0..m-1.
  VectorXd grid_best(const VectorXd& lo, const VectorXd& hi, int m, double& best, long& evals) const {
    const int a = angles();
    VectorXd theta = lo;
    VectorXd arg = lo;
    best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(a, 0);
    while (true) {
      for (int i = 0; i < a; ++i) {
        theta(i) = m > 1 ? lo(i) + (hi(i) - lo(i)) * idx[i] / (m - 1) : lo(i);
      }
      const double v = value(theta);
      ++evals;
      if (v < best) {
        best = v;
        arg = theta;
      }
      int k = a - 1;
      while (k >= 0 && idx[k] == m - 1) idx[k--] = 0;
      if (k < 0) break;
      ++idx[k];
    }
    return arg;
  }

  VectorXd search(int grid, double& best, long& evals) const {
    const int a = angles();
    if (a == 0) {
      best = value(VectorXd());
      ++evals;
      return VectorXd();
    }
    VectorXd lo = VectorXd::Zero(a);
    VectorXd hi = VectorXd::Constant(a, kHalfPi);
    VectorXd center = grid_best(lo, hi, grid + 1, best, evals);
    double spacing = kHalfPi / grid;
    constexpr int kZoomPoints = 21;
    while (spacing > 1e-12) {
      lo = (center.array() - 2 * spacing).max(0.0).matrix();
      hi = (center.array() + 2 * spacing).min(kHalfPi).matrix();
      double v = 0;
      VectorXd next = grid_best(lo, hi, kZoomPoints, v, evals);
      if (v <= best) {
        best = v;
        center = next;
      }
      spacing *= 4.0 / (kZoomPoints - 1);
    }
    return center;
  }

 private:
  const Domain& dom_;
  double eta_;
  std::vector<int> labels_;
  int blocks_ = 1;
  VectorXd root_size_;
};

struct Candidate {
  VectorXd g;
  double value;
};

bool lexicographically_greater(const VectorXd& a, const VectorXd& b) {
  return std::lexicographical_compare(b.data(), b.data() + b.size(), a.data(), a.data() + a.size());
}

// Keeps candidates within `tie` of the best value, drops duplicates and puts
// the lexicographically largest profile first.
VariationalResult collect(const Domain& dom, double eta, std::vector<Candidate> cands, double tie,
                          SolverDiagnostics diag) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, c.value);
  std::vector<VectorXd> optimal;
  for (const auto& c : cands) {
    if (c.value > best + tie) continue;
    const bool seen = std::any_of(optimal.begin(), optimal.end(), [&](const VectorXd& o) {
      return (o - c.g).lpNorm<Eigen::Infinity>() < 1e-6;
    });
    if (!seen) optimal.push_back(c.g);
  }
  std::sort(optimal.begin(), optimal.end(), lexicographically_greater);

  std::vector<ProbabilityProfile<double>> profiles;
  for (const auto& g : optimal) profiles.push_back(ProbabilityProfile<double>::normalized(dom, g));
  VariationalResult r{profiles.front(), 0.0, diag, std::move(profiles)};
  r.value = objective(r.minimizer, eta);
  return r;
}

}  // namespace

VariationalResult brute_force_L(const Domain& dom, double eta, int grid_points_per_axis) {
  if (!(eta > 0)) throw Error(ErrorCode::NonPositiveArgument, "eta must be positive");
  if (dom.size() > 4) {
    throw Error(ErrorCode::DomainTooLarge, "brute force is limited to |B| <= 4");
  }
  if (grid_points_per_axis < 100) {
    throw Error(ErrorCode::ArgumentOutOfRange, "brute force needs at least 100 grid points per angle");
  }
  SolverDiagnostics diag;
  std::vector<Candidate> cands;
  for (auto& labels : set_partitions(dom.size())) {
    PartitionSearch search(dom, eta, std::move(labels));
    double v = 0;
    const VectorXd theta = search.search(grid_points_per_axis, v, diag.evaluations);
    cands.push_back({search.profile(theta), v});
  }
  return collect(dom, eta, std::move(cands), 1e-9, diag);
}

namespace {

struct SmoothedObjective {
  const Domain& dom;
  double p;
  double kappa;

  double value(const VectorXd& g) const {
    double s = 0;
    for (int e = 0; e < dom.edge_count(); ++e) {
      const double d = gap(g, e);
      s += std::pow(d * d + kappa * kappa, p / 2);
    }
    return s;
  }

  VectorXd gradient(const VectorXd& g) const {
    VectorXd grad = VectorXd::Zero(g.size());
    for (int e = 0; e < dom.edge_count(); ++e) {
      const Edge& edge = dom.edges()[e];
      const double d = gap(g, e);
      const double c = p * std::pow(d * d + kappa * kappa, p / 2 - 1) * d;
      grad(edge.inner) += c;
      if (!edge.is_boundary()) grad(edge.outer) -= c;
    }
    return grad;
  }

  // Signed difference g(inner) - g(outer).
  double gap(const VectorXd& g, int e) const {
    const Edge& edge = dom.edges()[e];
    return g(edge.inner) - (edge.is_boundary() ? 0.0 : g(edge.outer));
  }
};

VectorXd project(VectorXd y) {
  y = y.cwiseMax(0.0);
  const double n = y.norm();
  if (!(n > 0)) return VectorXd();
  return y / n;
}

struct StageOutcome {
  long iterations = 0;
  bool stationary = false;
};

StageOutcome descend(const SmoothedObjective& f, VectorXd& x, const SolverOptions& opts) {
  StageOutcome out;
  double fx = f.value(x);
  double step = 1e-1;
  int quiet = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    ++out.iterations;
    const VectorXd grad = f.gradient(x);
    bool accepted = false;
    while (step > 1e-30) {
      const VectorXd y = project(x - step * grad);
      if (y.size() == 0) {
        step *= 0.5;
        continue;
      }
      const double fy = f.value(y);
      if (fy <= fx - 1e-4 * (y - x).squaredNorm() / step) {
        const double change = fx - fy;
        const double moved = (y - x).norm();
        x = y;
        fx = fy;
        accepted = true;
        step *= 2;
        quiet = (change <= opts.tolerance * (1 + std::abs(fx)) || moved < 1e-15) ? quiet + 1 : 0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || quiet >= 3) {
      out.stationary = true;
      return out;
    }
  }
  return out;
}

// Merges near-ties across interior edges and zeroes tiny entries; returns the
// best of the snapped variants (or `x` if none improves).
VectorXd snap(const Domain& dom, double eta, const VectorXd& x) {
  VectorXd best = x;
  double best_value = objective(dom, x, eta);
  for (double tau : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    VectorXd y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (y(i) < tau) y(i) = 0;
    std::vector<int> parent(y.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (const Edge& e : dom.edges()) {
      if (!e.is_boundary() && std::abs(y(e.inner) - y(e.outer)) < tau) parent[find(e.inner)] = find(e.outer);
    }
    VectorXd sum = VectorXd::Zero(y.size());
    VectorXd count = VectorXd::Zero(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      sum(find(i)) += y(i);
      count(find(i)) += 1;
    }
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = sum(find(i)) / count(find(i));
    y = project(y);
    if (y.size() == 0) continue;
    const double v = objective(dom, y, eta);
    if (v < best_value) {
      best_value = v;
      best = y;
    }
  }
  return best;
}

}  // namespace

VariationalResult solve_L(const Domain& dom, double eta, const SolverOptions& opts) {
  if (!(eta > 0)) throw Error(ErrorCode::NonPositiveArgument, "eta must be positive");
  if (opts.restarts < 0 || !(opts.kappa_min > 0) || !(opts.kappa_initial >= opts.kappa_min) ||
      !(opts.kappa_factor > 0 && opts.kappa_factor < 1) || opts.max_iterations < 1) {
    throw Error(ErrorCode::ArgumentOutOfRange, "invalid solver options");
  }
  const int n = dom.size();
  const double p = gap_exponent(eta);

  std::vector<VectorXd> starts;
  starts.push_back(VectorXd::Constant(n, 1.0 / std::sqrt(double(n))));
  Rng rng(opts.seed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < opts.restarts; ++r) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::abs(normal(rng));
    v = project(v);
    starts.push_back(v.size() ? v : starts.front());
  }

  SolverDiagnostics diag;
  diag.restarts = static_cast<int>(starts.size());
  std::vector<Candidate> cands;
  for (VectorXd x : starts) {
    bool converged = true;
    double kappa = opts.kappa_initial;
    while (true) {
      const StageOutcome s = descend(SmoothedObjective{dom, p, kappa}, x, opts);
      diag.iterations += s.iterations;
      converged = s.stationary;
      if (kappa <= opts.kappa_min) break;
      kappa = std::max(opts.kappa_min, kappa * opts.kappa_factor);
    }
    diag.kappa_final = kappa;
    if (converged) ++diag.converged_restarts;
    x = snap(dom, eta, x);
    cands.push_back({x, objective(dom, x, eta)});
  }
  if (diag.converged_restarts == 0) {
    throw Error(ErrorCode::NonConvergence,
                "no restart reached stationarity within " + std::to_string(opts.max_iterations) +
                    " iterations per stage (" + std::to_string(diag.iterations) + " total)");
  }
  return collect(dom, eta, std::move(cands), opts.tie_tolerance, diag);
}

nlohmann::json result_to_json(const VariationalResult& r, double eta) {
  nlohmann::json mins = nlohmann::json::array();
  for (const auto& m : r.minimizers) {
    mins.push_back(std::vector<double>(m.values().data(), m.values().data() + m.size()));
  }
  const auto& g = r.minimizer.values();
  return {{"eta", eta},
          {"L", r.value},
          {"minimizer", std::vector<double>(g.data(), g.data() + g.size())},
          {"minimizers", mins},
          {"domain", domain_to_json(r.minimizer.domain())},
          {"diagnostics",
           {{"iterations", r.diagnostics.iterations},
            {"kappa_final", r.diagnostics.kappa_final},
            {"restarts", r.diagnostics.restarts},
            {"converged_restarts", r.diagnostics.converged_restarts},
            {"evaluations", r.diagnostics.evaluations}}}};
}

}  // namespace rwrc
