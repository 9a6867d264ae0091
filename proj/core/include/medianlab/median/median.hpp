#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medianlab/median/operator.hpp"
#include "medianlab/metric/product.hpp"

namespace medianlab {

/// The median of a tree: the unique vertex on all three pairwise geodesics.
/// Throws NotATree unless the space has exactly n-1 edges.
TernaryOperator tree_median(SpacePtr tree, const OperatorOptions& options = {});

struct MedianGraphOptions {
  OperatorOptions op;
  /// Recognition stores every pairwise interval as a bitset.
  std::size_t max_vertices = 600;
};

/// Median of a median graph, found as the single vertex common to the three
/// pairwise metric intervals. Every triple is checked; the first triple whose
/// intersection is not a singleton is reported through NotMedianGraph.
TernaryOperator median_graph_median(SpacePtr space, const MedianGraphOptions& options = {});

/// Coordinate-wise median on a Cartesian product. Throws ArityMismatch unless
/// there is one factor operator per factor, each living on that factor.
TernaryOperator product_median(const ProductSpace& product, const std::vector<TernaryOperator>& factors,
                               std::string label = {}, const OperatorOptions& options = {});

struct AxiomReport {
  bool ok = true;
  /// "M0-symmetry", "M0-localisation" or "M1" for the first failure.
  std::string axiom;
  /// M0: (x,y,z). M1: (x,p,y,z).
  std::vector<Vertex> tuple;
  Vertex lhs = 0;
  Vertex rhs = 0;
};

/// Exact (M0) and (M1) scan. (M1) is m(m(x,p,y),p,z) = m(x,p,m(y,p,z)).
AxiomReport check_median_axioms(const TernaryOperator& op, std::size_t cap = 128);

/// [x,y] = {op(x,y,z) : z}, with the projection z -> op(x,y,z).
struct IntervalSet {
  Vertex x = 0;
  Vertex y = 0;
  VertexSet members;
  std::vector<Vertex> projection;
};

IntervalSet algebra_interval(const TernaryOperator& op, Vertex x, Vertex y);

struct ConvexityResult {
  bool convex = true;
  Vertex a1 = 0;
  Vertex a2 = 0;
  Vertex escaping = 0;
};

/// Convex iff [a1,a2] is inside the subset for all pairs of members. The
/// witness is the first (a1 <= a2, z) in lexicographic order.
ConvexityResult is_convex(const TernaryOperator& op, const VertexSet& subset);

struct RankEstimate {
  std::size_t rank = 0;
  /// 2^rank vertices; entry s is the image of the bit vector s.
  std::vector<Vertex> cube_witness;
};

struct RankOptions {
  std::size_t max_rank = 3;
  std::size_t max_vertices = 128;
};

/// Largest r <= max_rank such that {0,1}^r with majority vote embeds as a
/// subalgebra. Candidates are generated from a bottom o, a top a and r atoms
/// inside [o,a]; the remaining corners are joins m(u,v,a).
RankEstimate rank_estimate(const TernaryOperator& op, const RankOptions& options = {});

/// Checks that `cube` (indexed by bit vectors) is closed under op and that
/// op agrees with majority vote on it.
bool is_cube_embedding(const TernaryOperator& op, const std::vector<Vertex>& cube);

}  // namespace medianlab
