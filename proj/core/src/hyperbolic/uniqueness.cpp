#include "medianlab/hyperbolic/uniqueness.hpp"

#include <map>

namespace medianlab {

std::vector<Distance> UniquenessCurve::values(std::size_t first, std::size_t second) const {
  std::vector<Distance> out;
  for (const auto& p : points)
    if (p.first == first && p.second == second) out.push_back(p.sup_distance);
  return out;
}

UniquenessCurve uniqueness_experiment(const std::vector<TernaryOperator>& ops, const std::vector<Distance>& radii,
                                      Vertex basepoint) {
  if (ops.size() < 2) throw Error(ErrorCode::kInvalidParams, "the uniqueness experiment needs two operators");
  if (radii.empty()) throw Error(ErrorCode::kInvalidParams, "no radii given");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw Error(ErrorCode::kInvalidParams, "radii must increase");
  if (basepoint >= ops.front().size()) throw Error(ErrorCode::kInvalidParams, "basepoint out of range");

  UniquenessCurve curve;
  curve.basepoint = basepoint;
  curve.radii = radii;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      for (auto r : radii) {
        const auto rep = closeness(ops[i], ops[j], BallScope{basepoint, r});
        curve.points.push_back({r, i, j, ops[i].label() + "|" + ops[j].label(), rep.sup_distance, rep.argmax,
                                rep.triples_checked});
      }
  return curve;
}

ChainProximity center_chain_proximity(const TernaryOperator& center, const TernaryOperator& op,
                                      const CoarseCertificate& cert, Vertex basepoint, Distance radius) {
  if (!center.space().same_as(op.space()))
    throw Error(ErrorCode::kSpaceMismatch, "operators live on different spaces");
  const auto& space = op.space();
  const auto members = ball(space, basepoint, radius).members();
  std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> chains;
  auto chain = [&](Vertex a, Vertex b) -> const std::vector<Vertex>& {
    const auto key = std::minmax(a, b);
    auto it = chains.find(key);
    if (it == chains.end())
      it = chains.emplace(key, extract_quasigeodesic(op, cert, key.first, key.second).points).first;
    return it->second;
  };
  auto gap = [&](Vertex v, const std::vector<Vertex>& pts) {
    Distance best = space.diameter();
    for (auto u : pts) best = std::min(best, space.dist(v, u));
    return best;
  };
  ChainProximity out;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j)
      for (std::size_t k = j; k < members.size(); ++k) {
        const auto x = members[i], y = members[j], z = members[k];
        const auto c = center(x, y, z);
        const auto v = std::max({gap(c, chain(x, y)), gap(c, chain(y, z)), gap(c, chain(x, z))});
        if (v > out.value) out = {v, {x, y, z}};
      }
  return out;
}

}  // namespace medianlab
