#include "medianlab/metric/graph_space.hpp"

#include <deque>
#include <functional>
#include <limits>
#include <queue>

#include "medianlab/parallel.hpp"

namespace medianlab {

namespace {

void bfs_row(const GraphSpace& g, Vertex source, Distance* out) {
  const auto n = g.size();
  std::fill(out, out + n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  queue.push_back(source);
  out[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    for (const auto& nb : g.neighbors(u)) {
      if (out[nb.to] == kUnreachable) {
        out[nb.to] = out[u] + 1;
        queue.push_back(nb.to);
      }
    }
  }
}

void dijkstra_row(const GraphSpace& g, Vertex source, Distance* out) {
  const auto n = g.size();
  std::fill(out, out + n, kUnreachable);
  using Item = std::pair<Distance, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  out[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != out[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const auto nd = d + static_cast<Distance>(nb.weight);
      if (out[nb.to] == kUnreachable || nd < out[nb.to]) {
        out[nb.to] = nd;
        heap.emplace(nd, nb.to);
      }
    }
  }
}

}  // namespace

SpacePtr build_space(std::size_t n, std::vector<Edge> edges, std::string name,
                     const BuildOptions& options) {
  if (n == 0) throw Error(ErrorCode::kInvalidParams, "a space needs at least one vertex");
  if (n > options.max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded,
                "space has " + std::to_string(n) + " vertices; cap is " +
                    std::to_string(options.max_vertices));
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorCode::kInvalidEdge,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") is out of range for n=" + std::to_string(n),
                  {e.u, e.v});
    if (e.weight == 0 || e.weight > static_cast<std::uint32_t>(std::numeric_limits<Distance>::max() / 4))
      throw Error(ErrorCode::kInvalidEdge, "edge weights must be positive", {e.u, e.v});
    if (e.u == e.v) throw Error(ErrorCode::kInvalidEdge, "self-loop at " + std::to_string(e.u), {e.u, e.v});
  }

  auto space = std::make_shared<GraphSpace>();
  auto& g = *space;
  g.n_ = n;
  g.name_ = std::move(name);
  g.edges_ = std::move(edges);
  g.unit_weights_ = std::all_of(g.edges_.begin(), g.edges_.end(), [](const Edge& e) { return e.weight == 1; });

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]++] = {e.v, e.weight};
    g.adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) {
                return a.to < b.to || (a.to == b.to && a.weight < b.weight);
              });
  }

  g.dist_.assign(n * n, kUnreachable);
  // Connectivity first, so a disconnected input fails before the O(n m) work.
  bfs_row(g, 0, g.dist_.data());
  for (std::size_t v = 0; v < n; ++v) {
    if (g.dist_[v] == kUnreachable)
      throw Error(ErrorCode::kDisconnectedGraph,
                  "vertex " + std::to_string(v) + " is unreachable from vertex 0",
                  {0, static_cast<Vertex>(v)});
  }
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      auto* out = g.dist_.data() + s * n;
      if (g.unit_weights_)
        bfs_row(g, static_cast<Vertex>(s), out);
      else
        dijkstra_row(g, static_cast<Vertex>(s), out);
    }
    return char{};
  });
  g.diameter_ = *std::max_element(g.dist_.begin(), g.dist_.end());
  return space;
}

HalfInteger gromov_product(const GraphSpace& space, Vertex x, Vertex y, Vertex base) {
  return {static_cast<std::int64_t>(space.dist(x, base)) + space.dist(y, base) - space.dist(x, y)};
}

HalfInteger four_point_delta(const GraphSpace& space, Vertex a, Vertex b, Vertex c, Vertex d) {
  std::array<std::int64_t, 3> s{
      static_cast<std::int64_t>(space.dist(a, b)) + space.dist(c, d),
      static_cast<std::int64_t>(space.dist(a, c)) + space.dist(b, d),
      static_cast<std::int64_t>(space.dist(a, d)) + space.dist(b, c),
  };
  std::sort(s.begin(), s.end());
  return {s[2] - s[1]};
}

HyperbolicityEstimate estimate_hyperbolicity(const GraphSpace& space, const HyperbolicityOptions& options) {
  const auto n = space.size();
  if (n > options.max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded,
                "four-point sweep is O(n^4); n=" + std::to_string(n) + " exceeds cap " +
                    std::to_string(options.max_vertices));
  struct Best {
    std::int64_t twice = -1;
    std::array<Vertex, 4> quad{};
  };
  const auto& D = space.matrix();
  auto chunks = map_chunks<Best>(n, [&](std::size_t begin, std::size_t end) {
    Best best;
    for (std::size_t a = begin; a < end; ++a) {
      const Distance* ra = D.data() + a * n;
      for (std::size_t b = a + 1; b < n; ++b) {
        const Distance* rb = D.data() + b * n;
        const Distance dab = ra[b];
        for (std::size_t c = b + 1; c < n; ++c) {
          const Distance* rc = D.data() + c * n;
          const Distance dac = ra[c];
          const Distance dbc = rb[c];
          for (std::size_t d = c + 1; d < n; ++d) {
            const std::int64_t s1 = dab + rc[d];
            const std::int64_t s2 = dac + rb[d];
            const std::int64_t s3 = ra[d] + dbc;
            const std::int64_t hi = std::max({s1, s2, s3});
            const std::int64_t lo = std::min({s1, s2, s3});
            const std::int64_t mid = s1 + s2 + s3 - hi - lo;
            if (hi - mid > best.twice) {
              best.twice = hi - mid;
              best.quad = {static_cast<Vertex>(a), static_cast<Vertex>(b), static_cast<Vertex>(c),
                           static_cast<Vertex>(d)};
            }
          }
        }
      }
    }
    return best;
  });
  Best best;
  for (const auto& c : chunks)
    if (c.twice > best.twice) best = c;
  if (best.twice < 0) return {HalfInteger{0}, {0, 0, 0, 0}};
  return {HalfInteger{best.twice}, best.quad};
}

std::vector<Vertex> metric_interval(const GraphSpace& space, Vertex x, Vertex y) {
  std::vector<Vertex> out;
  const auto dxy = space.dist(x, y);
  const auto rx = space.row(x);
  const auto ry = space.row(y);
  for (std::size_t z = 0; z < space.size(); ++z)
    if (rx[z] + ry[z] == dxy) out.push_back(static_cast<Vertex>(z));
  return out;
}

VertexSet metric_interval_set(const GraphSpace& space, Vertex x, Vertex y) {
  return VertexSet::of(space.size(), metric_interval(space, x, y));
}

GeodesicPath geodesic_between(const GraphSpace& space, Vertex x, Vertex y) {
  const Vertex root = std::min(x, y);
  const Vertex tip = std::max(x, y);
  const auto from_root = space.row(root);
  GeodesicPath path;
  path.vertices.push_back(tip);
  Vertex cur = tip;
  while (cur != root) {
    Vertex parent = cur;
    for (const auto& nb : space.neighbors(cur)) {
      if (from_root[nb.to] + static_cast<Distance>(nb.weight) == from_root[cur]) {
        parent = nb.to;
        break;
      }
    }
    cur = parent;
    path.vertices.push_back(cur);
  }
  // Built tip -> root; flip when x is the root.
  if (x == root) std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

VertexSet ball(const GraphSpace& space, Vertex center, Distance radius) {
  VertexSet out(space.size());
  const auto r = space.row(center);
  for (std::size_t v = 0; v < space.size(); ++v)
    if (r[v] <= radius) out.insert(static_cast<Vertex>(v));
  return out;
}

std::vector<Distance> distances_to_set(const GraphSpace& space, const VertexSet& set) {
  const auto n = space.size();
  std::vector<Distance> out(n, std::numeric_limits<Distance>::max());
  if (space.unit_weights()) {
    std::vector<Vertex> queue = set.members();
    for (auto a : queue) out[a] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto u = queue[head];
      for (const auto& nb : space.neighbors(u))
        if (out[nb.to] == std::numeric_limits<Distance>::max()) {
          out[nb.to] = out[u] + 1;
          queue.push_back(nb.to);
        }
    }
    return out;
  }
  set.for_each([&](Vertex a) {
    const auto r = space.row(a);
    for (std::size_t v = 0; v < n; ++v) out[v] = std::min(out[v], r[v]);
  });
  return out;
}

VertexSet neighbourhood(const GraphSpace& space, const VertexSet& set, Distance radius) {
  if (radius == 0) return set;
  VertexSet out(space.size());
  const auto d = distances_to_set(space, set);
  for (std::size_t v = 0; v < space.size(); ++v)
    if (d[v] <= radius) out.insert(static_cast<Vertex>(v));
  return out;
}

std::vector<Vertex> find_metric_violation(const GraphSpace& space) {
  const auto n = space.size();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      const auto dab = space.dist(a, b);
      if (dab != space.dist(b, a) || (dab == 0) != (a == b) || dab < 0) return {a, b, b};
      for (Vertex c = 0; c < n; ++c)
        if (dab > space.dist(a, c) + space.dist(c, b)) return {a, b, c};
    }
  }
  return {};
}

}  // namespace medianlab
