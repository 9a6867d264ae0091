#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medianlab/constructions/shear.hpp"
#include "medianlab/median/median.hpp"

namespace medianlab {

/// A space built from a textual spec, with whatever structure the spec
/// carries (product factors, peripherals, shear).
///
///   path:N  star:K  regular:B:D  random:N:SEED  trivalent:D  tripod:LEN
///   cycle:N  grid:R:C  cube:R  relhyp:K:L[,L2,L3]  band:N[:T]  file:PATH
///   A*B*...   (Cartesian product of the non-product specs A, B, ...)
///
/// band:N is P_(N+1) x window under the shear f = d(., 0) with T = 3N
/// unless given.
struct SpaceBundle {
  std::string spec;
  SpacePtr space;
  std::vector<VertexSet> peripherals;
  std::optional<ProductSpace> product;
  std::vector<std::string> factor_specs;
  std::optional<ShearMap> shear;
  /// Provenance line written into serialized graph files.
  std::string provenance;
};

/// Throws ParseError for an unknown or malformed spec, InvalidParams for
/// out-of-range parameters, plus the generators' own errors.
SpaceBundle make_space(const std::string& spec, std::size_t max_vertices = 5000);

/// tree_median on trees, median_graph_median otherwise.
TernaryOperator exact_median(SpacePtr space, const OperatorOptions& options = {});

/// Operator specs:
///   tree-median  median-graph  triangle-center
///   product-median            exact median on each factor
///   product-triangle-center   triangle-center on each factor
///   sheared  standard         band spaces only
///   table:PATH                operator table file
/// Throws ParseError for an unknown spec, InvalidParams when the space lacks
/// the structure the operator needs.
TernaryOperator make_operator(const std::string& spec, const SpaceBundle& bundle);

}  // namespace medianlab
