#include "medianlab/constructions/generators.hpp"

#include "medianlab/parallel.hpp"
#include "medianlab/rng.hpp"

namespace medianlab {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, message);
}

}  // namespace

SpacePtr path_graph(std::size_t n) {
  require(n >= 1, "path needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return build_space(n, std::move(edges), "path:" + std::to_string(n));
}

SpacePtr star_graph(std::size_t k) {
  require(k >= 1, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= k; ++i) edges.push_back({0, i});
  return build_space(k + 1, std::move(edges), "star:" + std::to_string(k));
}

SpacePtr regular_tree(std::size_t branching, std::size_t depth) {
  require(branching >= 2, "regular tree needs branching >= 2");
  std::vector<Edge> edges;
  std::vector<Vertex> level{0};
  Vertex next = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Vertex> children;
    for (auto parent : level) {
      const auto count = parent == 0 ? branching : branching - 1;
      for (std::size_t c = 0; c < count; ++c) {
        edges.push_back({parent, next});
        children.push_back(next++);
      }
    }
    level = std::move(children);
    require(next <= 5000, "regular tree exceeds 5000 vertices");
  }
  return build_space(next, std::move(edges),
                     "regular:" + std::to_string(branching) + ":" + std::to_string(depth));
}

SpacePtr random_tree(std::size_t n, std::uint64_t seed) {
  require(n >= 1, "random tree needs at least one vertex");
  CounterRng rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.push_back({static_cast<Vertex>(rng.below(i)), i});
  return build_space(n, std::move(edges), "random:" + std::to_string(n) + ":" + std::to_string(seed));
}

SpacePtr trivalent_tree(std::size_t depth) {
  auto t = regular_tree(3, depth);
  return build_space(t->size(), t->edges(), "trivalent:" + std::to_string(depth));
}

SpacePtr cycle_graph(std::size_t n) {
  require(n >= 3, "cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return build_space(n, std::move(edges), "cycle:" + std::to_string(n));
}

SpacePtr grid_graph(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, static_cast<Vertex>(v + cols)});
    }
  return build_space(rows * cols, std::move(edges), "grid:" + std::to_string(rows) + ":" + std::to_string(cols));
}

SpacePtr hypercube_graph(std::size_t r) {
  require(r <= 12, "hypercube dimension is capped at 12");
  const std::size_t n = std::size_t{1} << r;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t b = 0; b < r; ++b) {
      const auto w = v ^ (Vertex{1} << b);
      if (w > v) edges.push_back({v, w});
    }
  return build_space(n, std::move(edges), "cube:" + std::to_string(r));
}

SpacePtr tripod_thickened(std::size_t len) {
  require(len >= 1, "tripod legs need length >= 1");
  // Spider vertices: 0 is the center, leg l position p (1..len) is 1 + l*len + (p-1).
  const std::size_t s = 3 * len + 1;
  std::vector<Edge> spider;
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t p = 1; p <= len; ++p) {
      const auto v = static_cast<Vertex>(1 + l * len + (p - 1));
      spider.push_back({p == 1 ? 0 : v - 1, v});
    }
  std::vector<Edge> edges;
  for (std::size_t layer = 0; layer < 2; ++layer)
    for (const auto& e : spider)
      edges.push_back({static_cast<Vertex>(e.u + layer * s), static_cast<Vertex>(e.v + layer * s)});
  for (Vertex v = 0; v < s; ++v) edges.push_back({v, static_cast<Vertex>(v + s)});
  for (Vertex v = 0; v < 2 * s; ++v) edges.push_back({v, static_cast<Vertex>(v + 2 * s)});
  return build_space(4 * s, std::move(edges), "tripod:" + std::to_string(len));
}

ProductSpace gen_product(const std::vector<SpacePtr>& factors, std::size_t max_vertices) {
  if (factors.size() == 1) return {factors[0], factors};
  return cartesian_product(factors, max_vertices);
}

BushinessReport bushiness(const GraphSpace& space, std::size_t max_leaves) {
  const auto n = space.size();
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (space.degree(v) == 1) leaves.push_back(v);
  if (leaves.size() > max_leaves)
    throw Error(ErrorCode::kSizeCapExceeded, "bushiness scan is capped at " + std::to_string(max_leaves) + " leaves");

  BushinessReport report;
  report.bushy = true;
  report.per_vertex.assign(n, HalfInteger{0});
  struct Best {
    std::int64_t twice = -1;
    std::array<Vertex, 3> triple{};
  };
  std::vector<Best> best(n);
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t vi = begin; vi < end; ++vi) {
      const auto v = static_cast<Vertex>(vi);
      if (space.degree(v) == 1) continue;
      std::vector<Vertex> usable;
      for (auto l : leaves)
        if (l != v) usable.push_back(l);
      auto& b = best[v];
      const auto rv = space.row(v);
      auto twice = [&](Vertex a, Vertex c) {
        return static_cast<std::int64_t>(rv[a]) + rv[c] - space.dist(a, c);
      };
      for (std::size_t i = 0; i < usable.size() && b.twice != 0; ++i)
        for (std::size_t j = i + 1; j < usable.size() && b.twice != 0; ++j) {
          const auto ij = twice(usable[i], usable[j]);
          if (b.twice >= 0 && ij >= b.twice) continue;
          for (std::size_t k = j + 1; k < usable.size(); ++k) {
            const auto worst = std::max({ij, twice(usable[i], usable[k]), twice(usable[j], usable[k])});
            if (b.twice < 0 || worst < b.twice) {
              b.twice = worst;
              b.triple = {usable[i], usable[j], usable[k]};
              if (worst == 0) break;
            }
          }
        }
    }
    return char{};
  });
  std::int64_t lambda = -1;
  bool any_interior = false;
  for (Vertex v = 0; v < n; ++v) {
    if (space.degree(v) == 1) continue;
    any_interior = true;
    if (best[v].twice < 0) {
      if (report.bushy) report.failing_vertex = v;
      report.bushy = false;
      continue;
    }
    report.per_vertex[v] = HalfInteger{best[v].twice};
    if (best[v].twice > lambda) {
      lambda = best[v].twice;
      report.worst_vertex = v;
      report.worst_leaves = best[v].triple;
    }
  }
  report.bushy = report.bushy && any_interior;
  report.lambda = HalfInteger{std::max<std::int64_t>(lambda, 0)};
  return report;
}

}  // namespace medianlab
