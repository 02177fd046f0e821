#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "rwrc/conductance_field.hpp"
#include "rwrc/random.hpp"

namespace rwrc {

/// Jump-chain record of a walk killed on leaving B.
///
/// `sites` holds X at time 0 and after each in-domain jump, so
/// sites.size() == jump_times.size() + 1. A jump across a boundary edge is
/// not a site visit: it is stored as exit_time / exit_edge / exit_point.
struct PathRecord {
  int start = 0;
  double horizon = 0;
  std::vector<double> jump_times;
  std::vector<int> sites;
  std::vector<int> jump_edges;
  bool exited = false;
  double exit_time = std::numeric_limits<double>::infinity();
  int exit_edge = -1;
  LatticePoint exit_point;

  int jump_count() const { return static_cast<int>(jump_times.size()); }
  /// min(horizon, exit_time)
  double end_time() const { return exited ? exit_time : horizon; }
  int final_site() const { return sites.back(); }
};

struct LocalTimes {
  Eigen::VectorXd occupation;
  double horizon = 0;

  Eigen::VectorXd normalized() const { return occupation / horizon; }
};

/// Exact (Gillespie) simulation of the variable-speed walk generated by the
/// field, started at `start` (the origin by default), up to the first of
/// leaving B and time t. Each step consumes one uniform for the holding time
/// and then, only if the jump happens before t, one uniform for the edge.
PathRecord simulate(const ConductanceField<double>& f, const Domain& dom, double t, Rng& rng,
                    int start = -1);

LocalTimes local_times(const PathRecord& path, int domain_size);

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
  int trials = 0;
};

/// Fraction of `n` simulated paths that stay in B up to time t.
McEstimate nonexit_mc(const ConductanceField<double>& f, const Domain& dom, double t, int n, Rng& rng);

/// Debug dump with columns step,time,site,x_1..x_d (one row per visited site
/// and a final row for the exterior point if the path exited).
void write_path_csv(std::ostream& os, const PathRecord& path, const Domain& dom);

}  // namespace rwrc
