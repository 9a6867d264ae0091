#pragma once

#include <cstdint>
#include <vector>

#include "medianlab/metric/graph_space.hpp"
#include "medianlab/metric/product.hpp"

namespace medianlab {

/// Path on n vertices 0-1-...-(n-1).
SpacePtr path_graph(std::size_t n);

/// Star with center 0 and leaves 1..k.
SpacePtr star_graph(std::size_t k);

/// Rooted tree in breadth-first numbering: the root has `branching`
/// children, every other internal vertex has branching-1, leaves at `depth`.
SpacePtr regular_tree(std::size_t branching, std::size_t depth);

/// Random recursive tree: vertex i > 0 attaches to a uniform parent < i.
SpacePtr random_tree(std::size_t n, std::uint64_t seed);

SpacePtr trivalent_tree(std::size_t depth);
SpacePtr cycle_graph(std::size_t n);
/// rows x cols grid, vertex r*cols + c.
SpacePtr grid_graph(std::size_t rows, std::size_t cols);
/// {0,1}^r with edges between vectors at Hamming distance one.
SpacePtr hypercube_graph(std::size_t r);

/// Three legs of length `len` glued at a center, times an edge, with a pendant
/// vertex hung on every vertex of that ladder. 4(3 len + 1) vertices.
SpacePtr tripod_thickened(std::size_t len);

/// Cartesian product with the l1 metric; a single factor is returned as is.
ProductSpace gen_product(const std::vector<SpacePtr>& factors, std::size_t max_vertices = 5000);

struct BushinessReport {
  /// There is an interior vertex, and every interior vertex sees at least
  /// three leaves.
  bool bushy = false;
  /// Max over interior vertices of the per-vertex value below.
  HalfInteger lambda;
  /// Per interior vertex: min over triples of distinct leaves of the largest
  /// pairwise Gromov product based at the vertex. Zero at leaves.
  std::vector<HalfInteger> per_vertex;
  Vertex worst_vertex = 0;
  std::array<Vertex, 3> worst_leaves{};
  /// First vertex with fewer than three usable leaves, when not bushy.
  Vertex failing_vertex = 0;
};

/// Finite stand-in for bushiness: leaves (degree-one vertices) play the role
/// of ideal points, geodesics to them the role of rays, and the remaining
/// vertices are the base points measured.
BushinessReport bushiness(const GraphSpace& space, std::size_t max_leaves = 400);

}  // namespace medianlab
