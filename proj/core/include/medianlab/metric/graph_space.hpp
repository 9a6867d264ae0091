#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "medianlab/common.hpp"

namespace medianlab {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t weight = 1;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex to = 0;
  std::uint32_t weight = 1;
};

struct BuildOptions {
  /// Full distance matrices are only built up to this many vertices.
  std::size_t max_vertices = 5000;
};

/// A finite connected graph with positive integer edge weights and its full
/// shortest-path metric. Immutable once built.
class GraphSpace {
 public:
  std::size_t size() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool unit_weights() const { return unit_weights_; }

  Distance dist(Vertex a, Vertex b) const { return dist_[static_cast<std::size_t>(a) * n_ + b]; }
  std::span<const Distance> row(Vertex a) const {
    return {dist_.data() + static_cast<std::size_t>(a) * n_, n_};
  }
  const std::vector<Distance>& matrix() const { return dist_; }

  /// Neighbours sorted by vertex index.
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  Distance diameter() const { return diameter_; }
  bool is_tree() const { return edges_.size() + 1 == n_; }

  /// True when both spaces have the same vertex count and edge list.
  bool same_as(const GraphSpace& other) const {
    return this == &other || (n_ == other.n_ && edges_ == other.edges_);
  }

 private:
  friend std::shared_ptr<const GraphSpace> build_space(std::size_t, std::vector<Edge>, std::string,
                                                       const BuildOptions&);
  std::size_t n_ = 0;
  std::string name_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<Distance> dist_;
  Distance diameter_ = 0;
  bool unit_weights_ = true;
};

using SpacePtr = std::shared_ptr<const GraphSpace>;

/// Builds a connected space on vertices 0..n-1. Throws InvalidEdge for an
/// out-of-range endpoint or a non-positive weight, DisconnectedGraph when the
/// graph has more than one component, SizeCapExceeded above the vertex cap.
SpacePtr build_space(std::size_t n, std::vector<Edge> edges, std::string name = {},
                     const BuildOptions& options = {});

/// (x|y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2.
HalfInteger gromov_product(const GraphSpace& space, Vertex x, Vertex y, Vertex base);

struct HyperbolicityEstimate {
  HalfInteger delta;
  std::array<Vertex, 4> witness{};
};

struct HyperbolicityOptions {
  std::size_t max_vertices = 200;
};

/// Minimal four-point delta over all quadruples, with the first quadruple (in
/// lexicographic order) attaining it. O(n^4).
HyperbolicityEstimate estimate_hyperbolicity(const GraphSpace& space,
                                             const HyperbolicityOptions& options = {});

/// Four-point delta of a single quadruple.
HalfInteger four_point_delta(const GraphSpace& space, Vertex a, Vertex b, Vertex c, Vertex d);

/// All z with d(x,z) + d(z,y) = d(x,y), ascending.
std::vector<Vertex> metric_interval(const GraphSpace& space, Vertex x, Vertex y);
VertexSet metric_interval_set(const GraphSpace& space, Vertex x, Vertex y);

struct GeodesicPath {
  std::vector<Vertex> vertices;
  Distance length(const GraphSpace& space) const {
    return vertices.empty() ? 0 : space.dist(vertices.front(), vertices.back());
  }
};

/// Canonical geodesic from x to y: shortest-path tree rooted at the lower of
/// the two endpoints, each vertex's parent being its smallest-index neighbour
/// one step closer to the root. Returned in x -> y order.
GeodesicPath geodesic_between(const GraphSpace& space, Vertex x, Vertex y);

/// Closed ball B(center, radius).
VertexSet ball(const GraphSpace& space, Vertex center, Distance radius);

/// d(v, A) for every v. A must be nonempty.
std::vector<Distance> distances_to_set(const GraphSpace& space, const VertexSet& set);

/// Closed R-neighbourhood of a set.
VertexSet neighbourhood(const GraphSpace& space, const VertexSet& set, Distance radius);

/// Scans the distance matrix for symmetry, zero-iff-equal and the triangle
/// inequality. Returns the first violating triple, or nothing.
std::vector<Vertex> find_metric_violation(const GraphSpace& space);

}  // namespace medianlab
