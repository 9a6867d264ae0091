#include "medianlab/coarse/coarse.hpp"

#include "medianlab/parallel.hpp"
#include "medianlab/rng.hpp"

namespace medianlab {

QuasiconvexityReport quasiconvexity(const TernaryOperator& op, const VertexSet& subset) {
  if (subset.empty()) throw Error(ErrorCode::kEmptySubset, "quasiconvexity of an empty subset");
  const auto& g = op.space();
  const auto to_set = distances_to_set(g, subset);
  const auto members = subset.members();
  const auto n = static_cast<Vertex>(op.size());

  using Best = std::pair<Distance, QuasiconvexityReport>;
  const auto chunks = map_chunks<Best>(members.size(), [&](std::size_t begin, std::size_t end) {
    Best best{-1, {}};
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i; j < members.size(); ++j)
        for (Vertex z = 0; z < n; ++z) {
          const auto m = op(members[i], members[j], z);
          if (to_set[m] > best.first) best = {to_set[m], {to_set[m], members[i], members[j], z, m}};
        }
    return best;
  });
  Best best{-1, {}};
  for (const auto& c : chunks)
    if (c.first > best.first) best = c;
  return best.second;
}

IntervalTable::IntervalTable(TernaryOperator op, std::size_t max_vertices) : op_(std::move(op)) {
  const auto n = op_.size();
  if (n > max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded, "interval table is capped at " + std::to_string(max_vertices) + " vertices");
  if (!op_.symmetric()) throw Error(ErrorCode::kInvalidParams, "interval tables need a symmetric operator");
  sets_.assign(n * n, VertexSet{});
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (auto x = static_cast<Vertex>(begin); x < end; ++x)
      for (Vertex y = x; y < n; ++y) {
        VertexSet s(n);
        for (Vertex z = 0; z < n; ++z) s.insert(op_(x, y, z));
        sets_[static_cast<std::size_t>(x) * n + y] = std::move(s);
      }
    return char{};
  });
}

QuasiconvexityReport quasiconvexity(const IntervalTable& table, const VertexSet& subset) {
  if (subset.empty()) throw Error(ErrorCode::kEmptySubset, "quasiconvexity of an empty subset");
  const auto& op = table.op();
  const auto to_set = distances_to_set(op.space(), subset);
  const auto members = subset.members();
  Distance best = -1;
  Vertex a1 = 0, a2 = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j) {
      const auto& I = table.interval(members[i], members[j]);
      if (best >= 0 && I.is_subset_of(subset)) continue;
      Distance worst = 0;
      I.for_each([&](Vertex e) { worst = std::max(worst, to_set[e]); });
      if (worst > best) {
        best = worst;
        a1 = members[i];
        a2 = members[j];
      }
    }
  const auto n = static_cast<Vertex>(op.size());
  for (Vertex z = 0; z < n; ++z) {
    const auto m = op(a1, a2, z);
    if (to_set[m] == best) return {best, a1, a2, z, m};
  }
  return {best, a1, a2, 0, op(a1, a2, 0)};
}

namespace {

struct Hit {
  Distance d = -1;
  std::array<Vertex, 3> triple{};
  std::uint64_t checked = 0;
};

Hit merge(const std::vector<Hit>& chunks) {
  Hit best;
  std::uint64_t total = 0;
  for (const auto& c : chunks) {
    total += c.checked;
    if (c.d > best.d) best = c;
  }
  best.checked = total;
  if (best.d < 0) best.d = 0;
  return best;
}

}  // namespace

ClosenessReport closeness(const TernaryOperator& mu, const TernaryOperator& nu, const ClosenessScope& scope) {
  if (!mu.space().same_as(nu.space()))
    throw Error(ErrorCode::kSpaceMismatch,
                "operators '" + mu.label() + "' and '" + nu.label() + "' live on different spaces");
  const auto& g = mu.space();
  const auto n = g.size();
  const bool unordered = mu.symmetric() && nu.symmetric();

  ClosenessReport report;
  report.scope = scope;

  auto sweep = [&](const std::vector<Vertex>& pts) {
    const auto k = pts.size();
    return merge(map_chunks<Hit>(k, [&](std::size_t begin, std::size_t end) {
      Hit hit;
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = unordered ? i : 0; j < k; ++j)
          for (std::size_t l = unordered ? j : 0; l < k; ++l) {
            const auto x = pts[i], y = pts[j], z = pts[l];
            const auto d = g.dist(mu(x, y, z), nu(x, y, z));
            ++hit.checked;
            if (d > hit.d) hit = {d, {x, y, z}, hit.checked};
          }
      return hit;
    }));
  };

  Hit best;
  if (std::holds_alternative<ExhaustiveScope>(scope)) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    best = sweep(all);
  } else if (const auto* b = std::get_if<BallScope>(&scope)) {
    if (b->center >= n) throw Error(ErrorCode::kInvalidParams, "ball center out of range");
    best = sweep(ball(g, b->center, b->radius).members());
  } else {
    const auto& s = std::get<SampleScope>(scope);
    report.sampled = true;
    best = merge(map_chunks<Hit>(s.samples, [&](std::size_t begin, std::size_t end) {
      Hit hit;
      for (std::size_t i = begin; i < end; ++i) {
        CounterRng rng(s.seed, i);
        const auto x = static_cast<Vertex>(rng.below(n));
        const auto y = static_cast<Vertex>(rng.below(n));
        const auto z = static_cast<Vertex>(rng.below(n));
        const auto d = g.dist(mu(x, y, z), nu(x, y, z));
        ++hit.checked;
        if (d > hit.d) hit = {d, {x, y, z}, hit.checked};
      }
      return hit;
    }));
  }
  report.sup_distance = best.d;
  report.argmax = best.triple;
  report.triples_checked = best.checked;
  return report;
}

}  // namespace medianlab
