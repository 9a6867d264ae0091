#pragma once

#include <string>
#include <vector>

#include "medianlab/coarse/coarse.hpp"
#include "medianlab/coarse/quasigeodesic.hpp"

namespace medianlab {

struct CurvePoint {
  Distance radius = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  /// "label_a|label_b".
  std::string pair;
  Distance sup_distance = 0;
  std::array<Vertex, 3> witness{};
  std::uint64_t triples_checked = 0;
};

struct UniquenessCurve {
  Vertex basepoint = 0;
  std::vector<Distance> radii;
  /// Pair-major, radii ascending within each pair.
  std::vector<CurvePoint> points;

  /// Values of one pair's curve, in radius order.
  std::vector<Distance> values(std::size_t first, std::size_t second) const;
};

/// For each pair of operators and each radius, closeness restricted to the
/// ball around the basepoint. Throws InvalidParams for fewer than two
/// operators or radii that do not increase.
UniquenessCurve uniqueness_experiment(const std::vector<TernaryOperator>& ops, const std::vector<Distance>& radii,
                                      Vertex basepoint = 0);

struct ChainProximity {
  /// max over triples in the ball of the distance from center(x,y,z) to the
  /// three interval chains of op.
  Distance value = 0;
  std::array<Vertex, 3> witness{};
};

/// How far triangle centers sit from the extracted quasigeodesics of another
/// operator, on triples of the ball.
ChainProximity center_chain_proximity(const TernaryOperator& center, const TernaryOperator& op,
                                      const CoarseCertificate& cert, Vertex basepoint, Distance radius);

}  // namespace medianlab
