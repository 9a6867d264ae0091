#pragma once

#include <array>
#include <optional>
#include <vector>

#include "medianlab/metric/graph_space.hpp"

namespace medianlab {

/// A k x k grid flat (vertex r*k + c) with three rays hung at corners
/// (0,0), (k-1,0) and (k-1,k-1). Ray vertices follow the flat, ray by ray,
/// nearest the corner first. The flat is the single peripheral.
struct RelHypToy {
  SpacePtr space;
  std::size_t flat_size = 0;
  std::vector<VertexSet> peripherals;
  std::array<Vertex, 3> attachments{};
  /// Far end of each ray (the attachment itself for a zero-length ray).
  std::array<Vertex, 3> ray_ends{};
};

/// Throws InvalidParams for flat_size 0 or, when flat_size > 1, for
/// attachments that coincide. flat_size 1 gives a tripod.
RelHypToy gen_relhyp_toy(std::size_t flat_size, std::array<std::size_t, 3> ray_lengths);

/// Distances within the subset agree with `intrinsic`, whose vertex i is the
/// i-th smallest member. Returns the first offending pair, if any.
std::optional<std::pair<Vertex, Vertex>> find_embedding_defect(const GraphSpace& space, const VertexSet& subset,
                                                               const GraphSpace& intrinsic);

}  // namespace medianlab
