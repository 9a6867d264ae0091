#pragma once

#include <vector>

#include "medianlab/metric/graph_space.hpp"

namespace medianlab {

/// Cartesian product of graph spaces with the l1 metric. Vertex index is the
/// mixed-radix number whose most significant digit is the first factor.
struct ProductSpace {
  SpacePtr space;
  std::vector<SpacePtr> factors;

  std::size_t arity() const { return factors.size(); }

  std::vector<Vertex> decode(Vertex v) const {
    std::vector<Vertex> coords(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      const auto radix = static_cast<Vertex>(factors[i]->size());
      coords[i] = v % radix;
      v /= radix;
    }
    return coords;
  }

  Vertex encode(const std::vector<Vertex>& coords) const {
    Vertex v = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      v = v * static_cast<Vertex>(factors[i]->size()) + coords[i];
    return v;
  }

  /// Coordinate projection to factor i.
  Vertex project(Vertex v, std::size_t i) const {
    for (std::size_t j = factors.size(); j-- > i + 1;) v /= static_cast<Vertex>(factors[j]->size());
    return v % static_cast<Vertex>(factors[i]->size());
  }
};

/// Builds the Cartesian product graph. Throws SizeCapExceeded when the vertex
/// count exceeds `max_vertices`, InvalidParams for an empty factor list.
ProductSpace cartesian_product(const std::vector<SpacePtr>& factors, std::size_t max_vertices = 5000,
                               std::string name = {});

}  // namespace medianlab
