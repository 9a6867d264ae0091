#include "medianlab/metric/product.hpp"

namespace medianlab {

ProductSpace cartesian_product(const std::vector<SpacePtr>& factors, std::size_t max_vertices,
                               std::string name) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidParams, "product needs at least one factor");
  std::size_t total = 1;
  for (const auto& f : factors) {
    total *= f->size();
    if (total > max_vertices)
      throw Error(ErrorCode::kSizeCapExceeded,
                  "product has more than " + std::to_string(max_vertices) + " vertices");
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) name += " x ";
      name += factors[i]->name().empty() ? "?" : factors[i]->name();
    }
  }
  ProductSpace product;
  product.factors = factors;

  // Stride of factor i = product of the radices after it.
  std::vector<std::size_t> stride(factors.size(), 1);
  for (std::size_t i = factors.size() - 1; i-- > 0;) stride[i] = stride[i + 1] * factors[i + 1]->size();

  std::vector<Edge> edges;
  for (std::size_t v = 0; v < total; ++v) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto coord = static_cast<Vertex>((v / stride[i]) % factors[i]->size());
      for (const auto& nb : factors[i]->neighbors(coord)) {
        if (nb.to <= coord) continue;
        const auto w = v + (nb.to - coord) * stride[i];
        edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w), nb.weight});
      }
    }
  }
  product.space = build_space(total, std::move(edges), std::move(name), BuildOptions{max_vertices});
  return product;
}

}  // namespace medianlab
