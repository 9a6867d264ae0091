#pragma once

#include <array>
#include <variant>

#include "medianlab/median/median.hpp"

namespace medianlab {

/// [x,y]_mu. The same enumeration as algebra_interval.
inline IntervalSet coarse_interval(const TernaryOperator& op, Vertex x, Vertex y) {
  return algebra_interval(op, x, y);
}

/// pi_{x,y}(z) = mu(x,y,z).
inline Vertex projection(const TernaryOperator& op, Vertex x, Vertex y, Vertex z) { return op(x, y, z); }

struct QuasiconvexityReport {
  /// Minimal D with [a1,a2] inside N_D(A) for all a1, a2 in A.
  Distance constant = 0;
  Vertex a1 = 0;
  Vertex a2 = 0;
  /// mu(a1, a2, z) is the escaping point.
  Vertex z = 0;
  Vertex escaping = 0;
};

/// Throws EmptySubset for an empty subset.
QuasiconvexityReport quasiconvexity(const TernaryOperator& op, const VertexSet& subset);

/// Every interval [x,y]_mu as a bitset, for repeated quasiconvexity queries
/// on one operator. n^2 bitsets; throws SizeCapExceeded above max_vertices.
class IntervalTable {
 public:
  explicit IntervalTable(TernaryOperator op, std::size_t max_vertices = 1024);

  const VertexSet& interval(Vertex x, Vertex y) const {
    return sets_[static_cast<std::size_t>(std::min(x, y)) * op_.size() + std::max(x, y)];
  }
  const TernaryOperator& op() const { return op_; }

 private:
  TernaryOperator op_;
  std::vector<VertexSet> sets_;
};

/// Same result (constant and witness) as quasiconvexity(op, subset), using
/// the precomputed intervals. Requires a symmetric operator.
QuasiconvexityReport quasiconvexity(const IntervalTable& table, const VertexSet& subset);

struct ExhaustiveScope {};
struct BallScope {
  Vertex center = 0;
  Distance radius = 0;
};
struct SampleScope {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
using ClosenessScope = std::variant<ExhaustiveScope, BallScope, SampleScope>;

struct ClosenessReport {
  Distance sup_distance = 0;
  std::array<Vertex, 3> argmax{};
  ClosenessScope scope;
  bool sampled = false;
  std::uint64_t triples_checked = 0;
};

/// sup d(mu(x,y,z), nu(x,y,z)) over the scope. Ties keep the first triple in
/// enumeration order. Throws SpaceMismatch unless both live on the same space.
ClosenessReport closeness(const TernaryOperator& mu, const TernaryOperator& nu, const ClosenessScope& scope = {});

}  // namespace medianlab
