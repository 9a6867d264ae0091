#pragma once

#include "medianlab/median/operator.hpp"

namespace medianlab {

struct TriangleCenter {
  Vertex center = 0;
  /// Max distance from the center to the three canonical sides.
  Distance radius = 0;
  Distance sum = 0;
};

/// Per-pair distance-to-side tables, shared by the operator and sweeps.
class SideDistances {
 public:
  /// Precomputes every pair when n <= max_precomputed.
  explicit SideDistances(SpacePtr space, std::size_t max_precomputed = 300);

  /// d(v, geodesic(a, b)) for every v, with geodesic(a, b) = geodesic(b, a).
  std::vector<std::uint16_t> row(Vertex a, Vertex b) const;
  const std::uint16_t* cached(Vertex a, Vertex b) const;
  const GraphSpace& space() const { return *space_; }

 private:
  SpacePtr space_;
  std::vector<std::uint16_t> table_;
};

/// Deterministic center of the triangle on (x, y, z): the triple is sorted,
/// a repeated argument is returned as is, otherwise the vertex minimizing
/// (max side distance, sum of side distances, index).
TriangleCenter triangle_center(const SideDistances& sides, Vertex x, Vertex y, Vertex z);

/// Coarse median choosing triangle centers. (M0) holds by construction.
TernaryOperator triangle_center_median(SpacePtr space, const OperatorOptions& options = {256, 1 << 16, true});

}  // namespace medianlab
