#include "rwrc/domain.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "rwrc/errors.hpp"

namespace rwrc {

namespace {

std::string format_point(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

Domain Domain::from_points(std::vector<LatticePoint> points, int dimension) {
  if (dimension <= 0) {
    throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  }
  if (points.empty()) {
    throw Error(ErrorCode::OriginMissing, "empty point list");
  }
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dimension) {
      throw Error(ErrorCode::DimensionMismatch,
                  "point " + format_point(p) + " is not in Z^" + std::to_string(dimension));
    }
  }
  std::sort(points.begin(), points.end());
  if (auto dup = std::adjacent_find(points.begin(), points.end()); dup != points.end()) {
    throw Error(ErrorCode::DuplicateSite, "site " + format_point(*dup) + " listed twice");
  }

  auto impl = std::make_shared<Impl>();
  impl->dimension = dimension;
  impl->sites = std::move(points);

  const LatticePoint origin(dimension, 0);
  auto it = std::lower_bound(impl->sites.begin(), impl->sites.end(), origin);
  if (it == impl->sites.end() || *it != origin) {
    throw Error(ErrorCode::OriginMissing, "the origin is not a site");
  }
  impl->origin = static_cast<int>(it - impl->sites.begin());

  std::map<LatticePoint, int> index;
  for (int i = 0; i < static_cast<int>(impl->sites.size()); ++i) index.emplace(impl->sites[i], i);

  const int n = static_cast<int>(impl->sites.size());
  const int degree = 2 * dimension;
  impl->incidence.assign(static_cast<std::size_t>(n) * degree, -1);

  // Each site contributes its 2d bonds; an interior bond is emitted by its
  // lexicographically smaller endpoint and back-filled into the larger one.
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < dimension; ++k) {
      for (int sign : {-1, +1}) {
        const int slot = x * degree + 2 * k + (sign > 0 ? 1 : 0);
        if (impl->incidence[slot] >= 0) continue;
        LatticePoint y = impl->sites[x];
        y[k] += sign;
        auto found = index.find(y);
        Edge e;
        e.inner = x;
        if (found == index.end()) {
          e.kind = EdgeKind::Boundary;
          e.exterior = std::move(y);
        } else {
          e.kind = EdgeKind::Interior;
          e.outer = found->second;
          impl->incidence[found->second * degree + 2 * k + (sign > 0 ? 0 : 1)] =
              static_cast<int>(impl->edges.size());
          ++impl->interior_count;
        }
        impl->incidence[slot] = static_cast<int>(impl->edges.size());
        impl->edges.push_back(std::move(e));
      }
    }
  }

  // Connectivity by breadth-first search over interior edges.
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(impl->origin);
  seen[impl->origin] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop();
    for (int slot = 0; slot < degree; ++slot) {
      const Edge& e = impl->edges[impl->incidence[x * degree + slot]];
      if (e.is_boundary()) continue;
      const int y = e.inner == x ? e.outer : e.inner;
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        frontier.push(y);
      }
    }
  }
  if (reached != n) {
    throw Error(ErrorCode::DisconnectedDomain,
                std::to_string(n - reached) + " site(s) unreachable from the origin");
  }

  return Domain(std::move(impl));
}

Domain Domain::box(int dimension, int half_width) {
  if (half_width < 0) {
    throw Error(ErrorCode::ArgumentOutOfRange, "half_width must be nonnegative");
  }
  if (dimension <= 0) {
    throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
  }
  std::vector<LatticePoint> points;
  LatticePoint p(dimension, -half_width);
  while (true) {
    points.push_back(p);
    int k = dimension - 1;
    while (k >= 0 && p[k] == half_width) {
      p[k] = -half_width;
      --k;
    }
    if (k < 0) break;
    ++p[k];
  }
  return from_points(std::move(points), dimension);
}

std::optional<int> Domain::index_of(const LatticePoint& p) const {
  auto it = std::lower_bound(impl_->sites.begin(), impl_->sites.end(), p);
  if (it == impl_->sites.end() || *it != p) return std::nullopt;
  return static_cast<int>(it - impl_->sites.begin());
}

std::span<const int> Domain::incident_edges(int site) const {
  const std::size_t degree = 2 * static_cast<std::size_t>(impl_->dimension);
  return {impl_->incidence.data() + site * degree, degree};
}

int Domain::across(int edge, int site) const {
  const Edge& e = impl_->edges[edge];
  return e.inner == site ? e.outer : e.inner;
}

bool Domain::operator==(const Domain& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->dimension == other.impl_->dimension && impl_->sites == other.impl_->sites;
}

nlohmann::json domain_to_json(const Domain& dom) {
  return {{"d", dom.dimension()}, {"sites", dom.sites()}};
}

Domain domain_from_json(const nlohmann::json& j) {
  try {
    return Domain::from_points(j.at("sites").get<std::vector<LatticePoint>>(), j.at("d").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("domain JSON: ") + e.what());
  }
}

}  // namespace rwrc
