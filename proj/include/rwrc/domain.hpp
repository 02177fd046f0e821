#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace rwrc {

using LatticePoint = std::vector<int>;

enum class EdgeKind { Interior, Boundary };

/// Nearest-neighbour bond with at least one endpoint in the domain.
///
/// `inner` is always a site index. For interior edges `outer` is the index of
/// the other site; for boundary edges `outer` is -1 and the exterior lattice
/// point is kept in `exterior`.
struct Edge {
  int inner = -1;
  int outer = -1;
  LatticePoint exterior;
  EdgeKind kind = EdgeKind::Interior;

  bool is_boundary() const { return kind == EdgeKind::Boundary; }
  bool operator==(const Edge&) const = default;
};

/// Finite connected subset B of Z^d containing the origin, together with its
/// edge set E_B (all bonds touching B). Sites and edges are in canonical
/// lexicographic order. Copies share the same immutable storage.
class Domain {
 public:
  /// Validates and sorts `points`. Throws Error on duplicates, dimension
  /// mismatch, a missing origin or a disconnected set.
  static Domain from_points(std::vector<LatticePoint> points, int dimension);

  /// Centred box [-half_width, half_width]^d.
  static Domain box(int dimension, int half_width);

  int dimension() const { return impl_->dimension; }
  int size() const { return static_cast<int>(impl_->sites.size()); }
  int origin_index() const { return impl_->origin; }
  const std::vector<LatticePoint>& sites() const { return impl_->sites; }
  const LatticePoint& site(int i) const { return impl_->sites[i]; }
  std::optional<int> index_of(const LatticePoint& p) const;

  const std::vector<Edge>& edges() const { return impl_->edges; }
  int edge_count() const { return static_cast<int>(impl_->edges.size()); }
  int interior_edge_count() const { return impl_->interior_count; }

  /// The 2d edges incident to a site, ordered by direction
  /// (-e_1, +e_1, -e_2, +e_2, ...).
  std::span<const int> incident_edges(int site) const;

  /// Index of the site across `edge` from `site`, or -1 if that is exterior.
  int across(int edge, int site) const;

  bool operator==(const Domain& other) const;

 private:
  struct Impl {
    int dimension = 0;
    int origin = -1;
    int interior_count = 0;
    std::vector<LatticePoint> sites;
    std::vector<Edge> edges;
    std::vector<int> incidence;  // size() * 2d
  };
  explicit Domain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

inline Domain build_domain(std::vector<LatticePoint> points, int dimension) {
  return Domain::from_points(std::move(points), dimension);
}

inline Domain box_domain(int dimension, int half_width) {
  return Domain::box(dimension, half_width);
}

inline std::vector<Edge> edge_set(const Domain& dom) { return dom.edges(); }

nlohmann::json domain_to_json(const Domain& dom);
Domain domain_from_json(const nlohmann::json& j);

}  // namespace rwrc
