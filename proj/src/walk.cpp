#include "rwrc/walk.hpp"

#include <cmath>
#include <ostream>

namespace rwrc {

PathRecord simulate(const ConductanceField<double>& f, const Domain& dom, double t, Rng& rng, int start) {
  require_same_domain(f.domain(), dom, ErrorCode::FieldMismatch);
  if (!(t >= 0)) throw Error(ErrorCode::ArgumentOutOfRange, "horizon must be nonnegative");
  PathRecord path;
  path.start = start < 0 ? dom.origin_index() : start;
  path.horizon = t;
  path.sites.push_back(path.start);

  const Eigen::VectorXd totals = f.site_totals();
  double now = 0;
  int here = path.start;
  while (true) {
    const double hold = -std::log(uniform_open(rng)) / totals(here);
    if (now + hold > t) break;
    now += hold;

    double target = uniform_open(rng) * totals(here);
    const auto incident = dom.incident_edges(here);
    int chosen = incident.back();
    for (int e : incident) {
      target -= f[e];
      if (target < 0) {
        chosen = e;
        break;
      }
    }

    const int next = dom.across(chosen, here);
    if (next < 0) {
      path.exited = true;
      path.exit_time = now;
      path.exit_edge = chosen;
      path.exit_point = dom.edges()[chosen].exterior;
      break;
    }
    path.jump_times.push_back(now);
    path.jump_edges.push_back(chosen);
    path.sites.push_back(next);
    here = next;
  }
  return path;
}

LocalTimes local_times(const PathRecord& path, int domain_size) {
  LocalTimes lt;
  lt.horizon = path.horizon;
  lt.occupation = Eigen::VectorXd::Zero(domain_size);
  double last = 0;
  for (int i = 0; i < path.jump_count(); ++i) {
    lt.occupation(path.sites[i]) += path.jump_times[i] - last;
    last = path.jump_times[i];
  }
  lt.occupation(path.final_site()) += path.end_time() - last;
  return lt;
}

McEstimate nonexit_mc(const ConductanceField<double>& f, const Domain& dom, double t, int n, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one trial");
  if (t == 0) return {1.0, 0.0, n};
  long stayed = 0;
  for (int i = 0; i < n; ++i) {
    if (!simulate(f, dom, t, rng).exited) ++stayed;
  }
  const double p = static_cast<double>(stayed) / n;
  return {p, std::sqrt(p * (1 - p) / n), n};
}

void write_path_csv(std::ostream& os, const PathRecord& path, const Domain& dom) {
  os << "step,time,site";
  for (int k = 0; k < dom.dimension(); ++k) os << ",x" << (k + 1);
  os << '\n';
  auto row = [&](int step, double time, int site, const LatticePoint& p) {
    os << step << ',' << time << ',' << site;
    for (int c : p) os << ',' << c;
    os << '\n';
  };
  row(0, 0.0, path.sites[0], dom.site(path.sites[0]));
  for (int i = 0; i < path.jump_count(); ++i) {
    row(i + 1, path.jump_times[i], path.sites[i + 1], dom.site(path.sites[i + 1]));
  }
  if (path.exited) row(path.jump_count() + 1, path.exit_time, -1, path.exit_point);
}

}  // namespace rwrc
