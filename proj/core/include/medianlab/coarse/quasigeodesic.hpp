#pragma once

#include <vector>

#include "medianlab/coarse/certificate.hpp"

namespace medianlab {

/// A discrete path u_0..u_m with its measured quality.
struct QuasiChain {
  std::vector<Vertex> points;
  /// Claimed (L, A): d(u_i,u_j) <= L|i-j| + A and |i-j| <= L d(u_i,u_j) + A.
  Ratio L{1};
  Ratio A{0};
  Distance max_step = 0;
  /// max over i < j of |i-j| - d(u_i,u_j).
  std::int64_t index_excess = 0;
  /// Least L >= 1 for which the chain is an (L, L)-quasigeodesic.
  Ratio empirical_L{1};
};

/// Recomputes max_step, index_excess and empirical_L from the points.
void measure_chain(const GraphSpace& space, QuasiChain& chain);

/// True when every pair satisfies both (L, A) inequalities with the additive
/// slack added to A.
bool satisfies_parameters(const GraphSpace& space, const QuasiChain& chain, std::int64_t slack);

/// A chain from x to y inside [x,y] whose steps are at most floor(2C) and
/// whose length is minimal among such chains: a breadth-first shortest path
/// in the graph on [x,y] joining points at distance <= 2C (lowest-index
/// neighbours first). Claimed parameters (2C, 4C). Throws NoChain when y is
/// not reachable.
QuasiChain extract_quasigeodesic(const TernaryOperator& op, const CoarseCertificate& cert, Vertex x, Vertex y);

struct ThroughPointChain {
  QuasiChain chain;
  /// p' = mu(x, y, p) and d(p, p').
  Vertex projected = 0;
  Distance adjustment = 0;
  /// min_i d(u_i, p).
  Distance passes_within = 0;
  /// Every point lies in [x,y].
  bool inside_interval = true;
};

/// Concatenates minimal chains x -> p' and p' -> y and moves each point that
/// is not already in [x,y] to its projection mu(x, y, u); consecutive
/// repeats are dropped. Claimed parameters are the measured (L, L).
ThroughPointChain through_point_quasigeodesic(const TernaryOperator& op, const CoarseCertificate& cert, Vertex x,
                                              Vertex y, Vertex p);

}  // namespace medianlab
