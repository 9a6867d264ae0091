#include "medianlab/hyperbolic/barycentre.hpp"

#include <limits>
#include <optional>

#include "medianlab/parallel.hpp"

namespace medianlab {

namespace {

bool degenerate(Vertex x, Vertex y, Vertex z, Vertex& repeated) {
  if (x == y || x == z) {
    repeated = x;
    return true;
  }
  if (y == z) {
    repeated = y;
    return true;
  }
  return false;
}

struct Sides {
  std::vector<std::uint16_t> alpha, beta, gamma;
};

Sides sides_of(const SideDistances& sd, Vertex x, Vertex y, Vertex z) {
  return {sd.row(y, z), sd.row(x, z), sd.row(x, y)};
}

std::optional<BarycentreResult> classify_rows(const Sides& s, const Peripherals& peripherals, Distance delta) {
  const auto n = s.alpha.size();
  auto within = [delta](std::uint16_t d) { return static_cast<Distance>(d) <= delta; };
  for (std::size_t v = 0; v < n; ++v)
    if (within(s.alpha[v]) && within(s.beta[v]) && within(s.gamma[v]))
      return BarycentreResult{BarycentreKind::kPoint, static_cast<Vertex>(v), 0, 0, 0, delta};
  for (std::size_t i = 0; i < peripherals.size(); ++i) {
    std::optional<Vertex> a, b, c;
    peripherals[i].for_each([&](Vertex v) {
      if (!a && within(s.beta[v]) && within(s.gamma[v])) a = v;
      if (!b && within(s.alpha[v]) && within(s.gamma[v])) b = v;
      if (!c && within(s.alpha[v]) && within(s.beta[v])) c = v;
    });
    if (a && b && c) return BarycentreResult{BarycentreKind::kPeripheral, *b, i, *a, *c, delta};
  }
  return std::nullopt;
}

Distance minimal_from_rows(const Sides& s, const Peripherals& peripherals) {
  auto hi2 = [](std::uint16_t p, std::uint16_t q) { return static_cast<Distance>(std::max(p, q)); };
  Distance best = std::numeric_limits<Distance>::max();
  for (std::size_t v = 0; v < s.alpha.size(); ++v)
    best = std::min(best, static_cast<Distance>(std::max({s.alpha[v], s.beta[v], s.gamma[v]})));
  for (const auto& p : peripherals) {
    Distance a = std::numeric_limits<Distance>::max(), b = a, c = a;
    p.for_each([&](Vertex v) {
      a = std::min(a, hi2(s.beta[v], s.gamma[v]));
      b = std::min(b, hi2(s.alpha[v], s.gamma[v]));
      c = std::min(c, hi2(s.alpha[v], s.beta[v]));
    });
    best = std::min(best, std::max({a, b, c}));
  }
  return best;
}

std::vector<Distance> fresh_side(const GraphSpace& space, Vertex u, Vertex v) {
  // Independent of the stored matrix: BFS from both ends, then walk the
  // canonical parent pointers from the larger endpoint.
  const Vertex root = std::min(u, v);
  const Vertex tip = std::max(u, v);
  const auto n = space.size();
  std::vector<Distance> from_root(n, std::numeric_limits<Distance>::max());
  from_root[root] = 0;
  std::vector<Vertex> queue{root};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& nb : space.neighbors(queue[h]))
      if (from_root[nb.to] == std::numeric_limits<Distance>::max()) {
        from_root[nb.to] = from_root[queue[h]] + 1;
        queue.push_back(nb.to);
      }
  std::vector<Vertex> side{tip};
  for (Vertex cur = tip; cur != root;) {
    for (const auto& nb : space.neighbors(cur))
      if (from_root[nb.to] + 1 == from_root[cur]) {
        cur = nb.to;
        break;
      }
    side.push_back(cur);
  }
  std::vector<Distance> out(n, std::numeric_limits<Distance>::max());
  for (auto s : side) out[s] = 0;
  queue = side;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& nb : space.neighbors(queue[h]))
      if (out[nb.to] == std::numeric_limits<Distance>::max()) {
        out[nb.to] = out[queue[h]] + 1;
        queue.push_back(nb.to);
      }
  return out;
}

}  // namespace

Distance default_barycentre_delta(const GraphSpace& space, const Peripherals& peripherals) {
  auto edges = space.edges();
  for (const auto& p : peripherals) {
    const auto m = p.members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        if (space.dist(m[i], m[j]) > 1) edges.push_back({m[i], m[j], 1});
  }
  const auto coned = build_space(space.size(), std::move(edges), space.name() + "/coned");
  const auto est = estimate_hyperbolicity(*coned, HyperbolicityOptions{400});
  return static_cast<Distance>(est.delta.twice) + 1;
}

Distance minimal_barycentre_delta(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y,
                                  Vertex z) {
  Vertex r = 0;
  if (degenerate(x, y, z, r)) return 0;
  // The lazy table never precomputes, so a throwaway pointer is fine.
  const SideDistances sd(std::shared_ptr<const GraphSpace>(&space, [](const GraphSpace*) {}), 0);
  return minimal_from_rows(sides_of(sd, x, y, z), peripherals);
}

BarycentreResult barycentre(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y, Vertex z,
                            Distance delta) {
  for (auto v : {x, y, z})
    if (v >= space.size()) throw Error(ErrorCode::kInvalidParams, "vertex out of range", {x, y, z});
  Vertex r = 0;
  if (degenerate(x, y, z, r)) return {BarycentreKind::kPoint, r, 0, 0, 0, delta};
  const SideDistances sd(std::shared_ptr<const GraphSpace>(&space, [](const GraphSpace*) {}), 0);
  const auto s = sides_of(sd, x, y, z);
  if (auto res = classify_rows(s, peripherals, delta)) return *res;
  const auto need = minimal_from_rows(s, peripherals);
  throw Error(ErrorCode::kNoBarycentre,
              "no barycentre at delta " + std::to_string(delta) + "; minimal delta is " + std::to_string(need),
              {x, y, z});
}

bool recheck_barycentre(const GraphSpace& space, const Peripherals& peripherals, Vertex x, Vertex y, Vertex z,
                        const BarycentreResult& result) {
  const auto delta = result.delta_used;
  Vertex r = 0;
  if (degenerate(x, y, z, r)) return result.kind == BarycentreKind::kPoint && result.b == r;
  const auto alpha = fresh_side(space, y, z);
  const auto beta = fresh_side(space, x, z);
  const auto gamma = fresh_side(space, x, y);
  if (result.kind == BarycentreKind::kPoint) {
    const auto b = result.b;
    return b < space.size() && alpha[b] <= delta && beta[b] <= delta && gamma[b] <= delta;
  }
  if (result.peripheral >= peripherals.size()) return false;
  const auto& B = peripherals[result.peripheral];
  const auto a = result.a, b = result.b, c = result.c;
  if (a >= space.size() || b >= space.size() || c >= space.size()) return false;
  if (!B.contains(a) || !B.contains(b) || !B.contains(c)) return false;
  return alpha[b] <= delta && alpha[c] <= delta && beta[a] <= delta && beta[c] <= delta && gamma[a] <= delta &&
         gamma[b] <= delta;
}

BarycentreClassifier::BarycentreClassifier(SpacePtr space, Peripherals peripherals, std::size_t max_vertices)
    : space_(space), peripherals_(std::move(peripherals)), sides_(space, max_vertices) {
  if (space_->size() > max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded, "barycentre sweeps are capped at " + std::to_string(max_vertices) +
                                                 " vertices");
}

const VertexSet& BarycentreClassifier::near(Vertex a, Vertex b) const {
  return near_[static_cast<std::size_t>(std::min(a, b)) * space_->size() + std::max(a, b)];
}

void BarycentreClassifier::set_delta(Distance delta) {
  if (delta == delta_) return;
  delta_ = delta;
  const auto n = space_->size();
  near_.assign(n * n, VertexSet{});
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (auto a = static_cast<Vertex>(begin); a < end; ++a)
      for (Vertex b = a; b < n; ++b) {
        VertexSet s(n);
        const auto* row = sides_.cached(a, b);
        for (std::size_t v = 0; v < n; ++v)
          if (static_cast<Distance>(row[v]) <= delta) s.insert(static_cast<Vertex>(v));
        near_[static_cast<std::size_t>(a) * n + b] = std::move(s);
      }
    return char{};
  });
}

std::optional<BarycentreResult> BarycentreClassifier::classify(Vertex x, Vertex y, Vertex z) const {
  Vertex r = 0;
  if (degenerate(x, y, z, r)) return BarycentreResult{BarycentreKind::kPoint, r, 0, 0, 0, delta_};
  const auto& alpha = near(y, z);
  const auto& beta = near(x, z);
  const auto& gamma = near(x, y);
  const auto n = space_->size();
  const auto all = alpha & beta & gamma;
  if (const auto b = all.first(); b < n) return BarycentreResult{BarycentreKind::kPoint, b, 0, 0, 0, delta_};
  const auto ab = alpha & beta, ag = alpha & gamma, bg = beta & gamma;
  for (std::size_t i = 0; i < peripherals_.size(); ++i) {
    const auto& B = peripherals_[i];
    const auto a = (B & bg).first(), b = (B & ag).first(), c = (B & ab).first();
    if (a < n && b < n && c < n) return BarycentreResult{BarycentreKind::kPeripheral, b, i, a, c, delta_};
  }
  return std::nullopt;
}

BarycentreClassifier::Sweep BarycentreClassifier::sweep() const {
  const auto n = space_->size();
  struct Part {
    Sweep s;
    bool failed = false;
  };
  auto parts = map_chunks<Part>(n, [&](std::size_t begin, std::size_t end) {
    Part p;
    for (auto x = static_cast<Vertex>(begin); x < end; ++x)
      for (Vertex y = x; y < n; ++y)
        for (Vertex z = y; z < n; ++z) {
          const auto res = classify(x, y, z);
          if (!res) {
            if (!p.failed) {
              p.failed = true;
              p.s.all_classified = false;
              p.s.failure = {x, y, z};
            }
            continue;
          }
          if (res->kind == BarycentreKind::kPoint)
            ++p.s.points;
          else
            ++p.s.peripheral;
        }
    return p;
  });
  Sweep out;
  for (const auto& p : parts) {
    out.points += p.s.points;
    out.peripheral += p.s.peripheral;
    if (p.failed && out.all_classified) {
      out.all_classified = false;
      out.failure = p.s.failure;
    }
  }
  return out;
}

Distance BarycentreClassifier::minimal_delta(Distance start) {
  for (Distance d = start;; ++d) {
    set_delta(d);
    if (sweep().all_classified) return d;
    if (d > space_->diameter()) throw Error(ErrorCode::kNoBarycentre, "no delta classifies every triple");
  }
}

}  // namespace medianlab
