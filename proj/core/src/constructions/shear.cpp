#include "medianlab/constructions/shear.hpp"

#include <cstdlib>

#include "medianlab/constructions/generators.hpp"

namespace medianlab {

Distance ShearMap::max_f() const { return f.empty() ? 0 : *std::max_element(f.begin(), f.end()); }
Distance ShearMap::min_f() const { return f.empty() ? 0 : *std::min_element(f.begin(), f.end()); }

std::vector<Distance> distance_function(const GraphSpace& base, Vertex basepoint) {
  if (basepoint >= base.size()) throw Error(ErrorCode::kInvalidParams, "basepoint out of range");
  const auto r = base.row(basepoint);
  return {r.begin(), r.end()};
}

ShearMap make_shear(SpacePtr base, std::vector<Distance> f, Distance T,
                    std::optional<std::pair<Distance, Distance>> window) {
  if (!base) throw Error(ErrorCode::kInvalidParams, "shear needs a base space");
  if (f.size() != base->size())
    throw Error(ErrorCode::kInvalidParams, "f has " + std::to_string(f.size()) + " values for " +
                                               std::to_string(base->size()) + " vertices");
  for (Vertex u = 0; u < base->size(); ++u)
    for (const auto& nb : base->neighbors(u))
      if (std::abs(f[u] - f[nb.to]) > static_cast<Distance>(nb.weight))
        throw Error(ErrorCode::kInvalidParams, "f is not 1-Lipschitz", {u, nb.to});
  ShearMap shear{std::move(base), std::move(f), T, 0, 0};
  if (window) {
    shear.window_lo = window->first;
    shear.window_hi = window->second;
  } else {
    shear.window_lo = std::max<Distance>(0, -shear.min_f()) + shear.max_f() - shear.min_f();
    shear.window_hi = T - shear.max_f();
  }
  if (shear.window_lo > shear.window_hi)
    throw Error(ErrorCode::kInvalidParams, "empty window; enlarge T");
  if (shear.window_lo + shear.min_f() < 0 || shear.window_hi + shear.max_f() > T)
    throw Error(ErrorCode::kInvalidParams, "window rows leave [0, T] under the shear");
  return shear;
}

ProductSpace shear_window(const ShearMap& shear) {
  auto rows = path_graph(static_cast<std::size_t>(shear.rows()));
  const auto name = shear.base->name() + "*window[" + std::to_string(shear.window_lo) + "," +
                    std::to_string(shear.window_hi) + "]";
  return cartesian_product({shear.base, rows}, 5000, name);
}

Vertex window_vertex(const ShearMap& shear, Vertex x, Distance s) {
  if (x >= shear.base->size() || s < shear.window_lo || s > shear.window_hi)
    throw Error(ErrorCode::kWindowOverflow, "(" + std::to_string(x) + "," + std::to_string(s) + ") is outside the window");
  return x * static_cast<Vertex>(shear.rows()) + static_cast<Vertex>(s - shear.window_lo);
}

namespace {

Distance median3(Distance a, Distance b, Distance c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

}  // namespace

TernaryOperator standard_window_median(const ShearMap& shear, const TernaryOperator& base_op,
                                       const OperatorOptions& options) {
  if (!base_op.space().same_as(*shear.base))
    throw Error(ErrorCode::kSpaceMismatch, "base operator lives on a different space");
  const auto product = shear_window(shear);
  const auto rows = static_cast<Vertex>(shear.rows());
  auto opts = options;
  opts.symmetric = base_op.symmetric();
  return TernaryOperator::from_rule(
      product.space, OperatorKind::kProduct, "standard",
      [base_op, rows](Vertex p, Vertex q, Vertex r) {
        const auto x = base_op(p / rows, q / rows, r / rows);
        const auto s = median3(static_cast<Distance>(p % rows), static_cast<Distance>(q % rows),
                               static_cast<Distance>(r % rows));
        return x * rows + static_cast<Vertex>(s);
      },
      opts);
}

TernaryOperator sheared_median(const ShearMap& shear, const TernaryOperator& base_op,
                               const OperatorOptions& options) {
  if (!base_op.space().same_as(*shear.base))
    throw Error(ErrorCode::kSpaceMismatch, "base operator lives on a different space");
  const auto product = shear_window(shear);
  auto opts = options;
  opts.symmetric = base_op.symmetric();
  return TernaryOperator::from_rule(
      product.space, OperatorKind::kSheared, "sheared",
      [base_op, shear](Vertex p, Vertex q, Vertex r) {
        const auto rows = static_cast<Vertex>(shear.rows());
        auto lifted = [&](Vertex v) {
          return shear.window_lo + static_cast<Distance>(v % rows) + shear.f[v / rows];
        };
        const auto x = base_op(p / rows, q / rows, r / rows);
        const auto t = median3(lifted(p), lifted(q), lifted(r));
        const auto s = t - shear.f[x];
        if (s < shear.window_lo || s > shear.window_hi)
          throw Error(ErrorCode::kWindowOverflow,
                      "sheared median row " + std::to_string(s) + " leaves the window [" +
                          std::to_string(shear.window_lo) + "," + std::to_string(shear.window_hi) + "]",
                      {p, q, r});
        return x * rows + static_cast<Vertex>(s - shear.window_lo);
      },
      opts);
}

Distance shear_distortion(const ShearMap& shear) {
  const auto& X = *shear.base;
  const auto rows = shear.rows();
  Distance worst = 0;
  for (Vertex x = 0; x < X.size(); ++x)
    for (Vertex y = 0; y < X.size(); ++y) {
      const auto dx = X.dist(x, y);
      // |d(Phi u, Phi v) - d(u, v)| only depends on the row gap.
      for (Distance gap = -(rows - 1); gap < rows; ++gap) {
        const auto before = dx + std::abs(gap);
        const auto after = dx + std::abs(gap + shear.f[y] - shear.f[x]);
        worst = std::max(worst, std::abs(after - before));
      }
    }
  return worst;
}

}  // namespace medianlab
