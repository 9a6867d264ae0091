#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "medianlab/hyperbolic/triangle_center.hpp"

namespace medianlab {

enum class BarycentreKind { kPoint, kPeripheral };

/// Sides of the triangle on (x, y, z): alpha = [y,z], beta = [x,z],
/// gamma = [x,y], each the canonical geodesic.
///
/// Point: b is within delta of alpha, beta and gamma.
/// Peripheral: a, b, c lie in peripheral `peripheral`, alpha comes within
/// delta of b and c, beta of a and c, gamma of a and b.
struct BarycentreResult {
  BarycentreKind kind = BarycentreKind::kPoint;
  Vertex b = 0;
  std::size_t peripheral = 0;
  Vertex a = 0;
  Vertex c = 0;
  Distance delta_used = 0;
};

using Peripherals = std::vector<VertexSet>;

/// Default delta: twice the four-point delta of the space with every
/// peripheral made a clique, plus one.
Distance default_barycentre_delta(const GraphSpace& space, const Peripherals& peripherals);

/// Smallest delta at which (x, y, z) classifies.
Distance minimal_barycentre_delta(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y,
                                  Vertex z);

/// Point with the smallest vertex if one exists, otherwise Peripheral with
/// the smallest peripheral index and smallest a, b, c. A repeated argument
/// is its own Point. Throws NoBarycentre (message carries the minimal delta)
/// when neither case holds.
BarycentreResult barycentre(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y, Vertex z,
                            Distance delta);

/// Re-derives the sides from fresh breadth-first searches and checks the
/// incidence conditions of a result.
bool recheck_barycentre(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y, Vertex z,
                        const BarycentreResult& result);

/// All-triples classification with side neighbourhoods kept as bitsets.
class BarycentreClassifier {
 public:
  BarycentreClassifier(SpacePtr space, Peripherals peripherals, std::size_t max_vertices = 400);

  void set_delta(Distance delta);
  Distance delta() const { return delta_; }

  /// Same answer as barycentre(); returns nothing instead of throwing.
  std::optional<BarycentreResult> classify(Vertex x, Vertex y, Vertex z) const;

  struct Sweep {
    bool all_classified = true;
    std::uint64_t points = 0;
    std::uint64_t peripheral = 0;
    /// First unordered triple that fails, when any does.
    std::array<Vertex, 3> failure{};
  };
  /// Every unordered triple at the current delta.
  Sweep sweep() const;

  /// Least delta at which every triple classifies, found by raising delta
  /// from `start`. Leaves the classifier at that delta.
  Distance minimal_delta(Distance start = 0);

 private:
  const VertexSet& near(Vertex a, Vertex b) const;

  SpacePtr space_;
  Peripherals peripherals_;
  SideDistances sides_;
  Distance delta_ = -1;
  std::vector<VertexSet> near_;
};

}  // namespace medianlab
