#include "medianlab/constructions/relhyp.hpp"

#include <optional>
#include <set>

namespace medianlab {

RelHypToy gen_relhyp_toy(std::size_t flat_size, std::array<std::size_t, 3> ray_lengths) {
  const auto k = flat_size;
  if (k == 0) throw Error(ErrorCode::kInvalidParams, "flat size must be positive");
  RelHypToy toy;
  toy.flat_size = k;
  const auto at = [k](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * k + c); };
  toy.attachments = {at(0, 0), at(k - 1, 0), at(k - 1, k - 1)};
  if (k > 1 && std::set<Vertex>(toy.attachments.begin(), toy.attachments.end()).size() != 3)
    throw Error(ErrorCode::kInvalidParams, "rays must attach at distinct vertices");

  std::vector<Edge> edges;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      if (c + 1 < k) edges.push_back({at(r, c), at(r, c + 1), 1});
      if (r + 1 < k) edges.push_back({at(r, c), at(r + 1, c), 1});
    }
  auto next = static_cast<Vertex>(k * k);
  for (std::size_t i = 0; i < 3; ++i) {
    Vertex prev = toy.attachments[i];
    for (std::size_t j = 0; j < ray_lengths[i]; ++j) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    toy.ray_ends[i] = prev;
  }
  const auto name = "relhyp:" + std::to_string(k) + ":" + std::to_string(ray_lengths[0]) + "," +
                    std::to_string(ray_lengths[1]) + "," + std::to_string(ray_lengths[2]);
  toy.space = build_space(next, std::move(edges), name);
  VertexSet flat(next);
  for (Vertex v = 0; v < k * k; ++v) flat.insert(v);
  toy.peripherals.push_back(std::move(flat));
  return toy;
}

std::optional<std::pair<Vertex, Vertex>> find_embedding_defect(const GraphSpace& space, const VertexSet& subset,
                                                               const GraphSpace& intrinsic) {
  const auto m = subset.members();
  if (m.size() != intrinsic.size())
    throw Error(ErrorCode::kInvalidParams, "subset and intrinsic space differ in size");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (space.dist(m[i], m[j]) != intrinsic.dist(static_cast<Vertex>(i), static_cast<Vertex>(j)))
        return std::pair{m[i], m[j]};
  return std::nullopt;
}

}  // namespace medianlab
