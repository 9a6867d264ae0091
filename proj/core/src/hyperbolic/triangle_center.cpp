#include "medianlab/hyperbolic/triangle_center.hpp"

#include <limits>

#include "medianlab/parallel.hpp"

namespace medianlab {

namespace {

std::vector<std::uint16_t> side_row(const GraphSpace& g, Vertex a, Vertex b) {
  const auto path = geodesic_between(g, std::min(a, b), std::max(a, b));
  const auto d = distances_to_set(g, VertexSet::of(g.size(), path.vertices));
  std::vector<std::uint16_t> out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    out[v] = static_cast<std::uint16_t>(std::min<Distance>(d[v], std::numeric_limits<std::uint16_t>::max()));
  return out;
}

}  // namespace

SideDistances::SideDistances(SpacePtr space, std::size_t max_precomputed) : space_(std::move(space)) {
  const auto n = space_->size();
  if (n > max_precomputed) return;
  table_.assign(n * n * n, 0);
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (auto a = static_cast<Vertex>(begin); a < end; ++a)
      for (Vertex b = a; b < n; ++b) {
        const auto r = side_row(*space_, a, b);
        std::copy(r.begin(), r.end(), table_.begin() + static_cast<std::ptrdiff_t>((a * n + b) * n));
        if (a != b)
          std::copy(r.begin(), r.end(), table_.begin() + static_cast<std::ptrdiff_t>((b * n + a) * n));
      }
    return char{};
  });
}

const std::uint16_t* SideDistances::cached(Vertex a, Vertex b) const {
  if (table_.empty()) return nullptr;
  const auto n = space_->size();
  return table_.data() + (static_cast<std::size_t>(a) * n + b) * n;
}

std::vector<std::uint16_t> SideDistances::row(Vertex a, Vertex b) const {
  if (const auto* c = cached(a, b)) return {c, c + space_->size()};
  return side_row(*space_, a, b);
}

TriangleCenter triangle_center(const SideDistances& sides, Vertex x, Vertex y, Vertex z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  if (x == y || y == z) return {y, 0, 0};
  std::vector<std::uint16_t> s1, s2, s3;
  const auto* ab = sides.cached(x, y);
  const auto* bc = sides.cached(y, z);
  const auto* ac = sides.cached(x, z);
  if (!ab) {
    s1 = sides.row(x, y);
    s2 = sides.row(y, z);
    s3 = sides.row(x, z);
    ab = s1.data();
    bc = s2.data();
    ac = s3.data();
  }
  TriangleCenter best{0, std::numeric_limits<Distance>::max(), std::numeric_limits<Distance>::max()};
  const auto n = sides.space().size();
  for (std::size_t v = 0; v < n; ++v) {
    const Distance hi = std::max({ab[v], bc[v], ac[v]});
    if (hi > best.radius) continue;
    const Distance sum = Distance{ab[v]} + bc[v] + ac[v];
    if (hi < best.radius || sum < best.sum) best = {static_cast<Vertex>(v), hi, sum};
  }
  return best;
}

TernaryOperator triangle_center_median(SpacePtr space, const OperatorOptions& options) {
  const auto n = space->size();
  // Side tables are only worth building when the operator will be tabulated.
  auto sides = std::make_shared<SideDistances>(space, n <= options.table_cap ? 300 : 0);
  auto opts = options;
  opts.symmetric = true;
  return TernaryOperator::from_rule(
      std::move(space), OperatorKind::kTriangleCenter, "triangle-center",
      [sides](Vertex x, Vertex y, Vertex z) { return triangle_center(*sides, x, y, z).center; }, opts);
}

}  // namespace medianlab
