#pragma once

#include <optional>
#include <vector>

#include "medianlab/median/median.hpp"

namespace medianlab {

/// Shear of X x [0, T] by a 1-Lipschitz f: Phi(x, s) = (x, s + f(x)).
/// Operators live on the window X x [window_lo, window_hi], whose rows Phi
/// maps into [0, T].
struct ShearMap {
  SpacePtr base;
  std::vector<Distance> f;
  Distance T = 0;
  Distance window_lo = 0;
  Distance window_hi = 0;

  Distance rows() const { return window_hi - window_lo + 1; }
  Distance max_f() const;
  Distance min_f() const;
};

/// Validates f (length, 1-Lipschitz, window inside Phi^-1[0,T]). When
/// `window` is not given it runs from max(0, -min f) + (max f - min f) to
/// T - max f; for f = d(., x0) on P_(n+1) and T = 3n that is [n, 2n].
/// Throws InvalidParams.
ShearMap make_shear(SpacePtr base, std::vector<Distance> f, Distance T,
                    std::optional<std::pair<Distance, Distance>> window = std::nullopt);

/// f(x) = d(x, basepoint).
std::vector<Distance> distance_function(const GraphSpace& base, Vertex basepoint = 0);

/// The window as an l1 product: base first, window row j is s = window_lo + j.
ProductSpace shear_window(const ShearMap& shear);

/// Vertex of (x, s) in the window space.
Vertex window_vertex(const ShearMap& shear, Vertex x, Distance s);

/// Standard median on the window: base_op on X, the path median on rows.
TernaryOperator standard_window_median(const ShearMap& shear, const TernaryOperator& base_op,
                                       const OperatorOptions& options = {320, 0, true});

/// mu_f = Phi^-1 o m o (Phi x Phi x Phi), m the coordinate-wise median of
/// base_op and the path median on [0, T]. Throws WindowOverflow with the
/// triple when the result leaves the window (also during tabulation).
TernaryOperator sheared_median(const ShearMap& shear, const TernaryOperator& base_op,
                               const OperatorOptions& options = {320, 0, true});

/// max over window pairs of |d(Phi u, Phi v) - d(u, v)|; at most max f - min f.
Distance shear_distortion(const ShearMap& shear);

}  // namespace medianlab
