#pragma once

#include <string>
#include <string_view>

#include "medianlab/median/operator.hpp"

namespace medianlab {

/// CSV `i,j,k,m` with a header line, one row per i <= j <= k in
/// lexicographic order.
std::string serialize_operator_table(const TernaryOperator& op);

/// Reads a symmetric operator table. Every sorted triple must appear exactly
/// once (ParseError otherwise) and m(x,x,y) = x must hold (M0Violated).
/// Lines starting with '#' and a leading `i,j,k,m` header are ignored.
TernaryOperator load_operator_table(SpacePtr space, std::string_view text, std::string label = "table",
                                    const OperatorOptions& options = {});

}  // namespace medianlab
