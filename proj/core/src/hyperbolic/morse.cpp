#include "medianlab/hyperbolic/morse.hpp"

#include "medianlab/rng.hpp"

namespace medianlab {

namespace {

void measure_path(const GraphSpace& space, const std::vector<Distance>& to_subset, MorsePath& path) {
  QuasiChain chain;
  chain.points = path.points;
  measure_chain(space, chain);
  path.empirical_L = chain.empirical_L;
  path.excursion = 0;
  path.farthest = 0;
  for (std::size_t i = 0; i < path.points.size(); ++i)
    if (to_subset[path.points[i]] > path.excursion) {
      path.excursion = to_subset[path.points[i]];
      path.farthest = i;
    }
}

void append_geodesic(const GraphSpace& space, std::vector<Vertex>& out, Vertex from, Vertex to) {
  const auto g = geodesic_between(space, from, to).vertices;
  out.insert(out.end(), g.begin() + (out.empty() ? 0 : 1), g.end());
}

}  // namespace

Distance MorseGauge::N_at(Ratio L) const {
  Distance best = -1;
  for (const auto& p : corpus)
    if (p.empirical_L <= L) best = std::max(best, p.excursion);
  if (best < 0) throw Error(ErrorCode::kEmptyCorpus, "no corpus path is an (" + L.str() + "," + L.str() + ")-quasigeodesic");
  return best;
}

MorseGauge morse_gauge(const GraphSpace& space, const VertexSet& subset, const MorseOptions& options) {
  const auto members = subset.members();
  if (members.empty()) throw Error(ErrorCode::kEmptySubset, "Morse gauge of an empty subset");
  if (options.corpus_size == 0) throw Error(ErrorCode::kEmptyCorpus, "corpus size is zero");
  const auto to_subset = distances_to_set(space, subset);

  MorseGauge gauge;
  gauge.subset = members;
  gauge.seed = options.seed;
  gauge.corpus.resize(options.corpus_size);
  for (std::size_t i = 0; i < options.corpus_size; ++i) {
    CounterRng rng(options.seed, i);
    const auto a = members[rng.below(members.size())];
    const auto b = members[rng.below(members.size())];
    const auto spine = geodesic_between(space, a, b).vertices;
    auto& path = gauge.corpus[i];
    const auto stops = rng.below(options.max_waypoints + 1);
    for (std::uint64_t s = 0; s < stops; ++s) {
      const auto centre = spine[rng.below(spine.size())];
      const auto radius = static_cast<Distance>(rng.below(static_cast<std::uint64_t>(space.dist(a, b) / 2 + 2)));
      const auto pool = ball(space, centre, radius).members();
      path.waypoints.push_back(pool[rng.below(pool.size())]);
    }
    Vertex cur = a;
    path.points.push_back(a);
    for (auto w : path.waypoints) {
      append_geodesic(space, path.points, cur, w);
      cur = w;
    }
    append_geodesic(space, path.points, cur, b);
    measure_path(space, to_subset, path);
  }

  for (const auto& L : options.L_values) {
    MorseLevel level{L, -1, 0, 0};
    for (std::size_t i = 0; i < gauge.corpus.size(); ++i) {
      const auto& p = gauge.corpus[i];
      if (p.empirical_L > L) continue;
      ++level.accepted;
      if (p.excursion > level.N) {
        level.N = p.excursion;
        level.witness = i;
      }
    }
    if (level.accepted == 0)
      throw Error(ErrorCode::kEmptyCorpus, "no corpus path is an (" + L.str() + "," + L.str() + ")-quasigeodesic");
    gauge.levels.push_back(level);
  }
  return gauge;
}

bool recheck_morse_path(const GraphSpace& space, const VertexSet& subset, const MorsePath& path) {
  if (path.points.empty() || !subset.contains(path.points.front()) || !subset.contains(path.points.back()))
    return false;
  for (std::size_t i = 1; i < path.points.size(); ++i)
    if (space.dist(path.points[i - 1], path.points[i]) > 1) return false;
  MorsePath fresh;
  fresh.points = path.points;
  measure_path(space, distances_to_set(space, subset), fresh);
  return fresh.empirical_L == path.empirical_L && fresh.excursion == path.excursion &&
         fresh.farthest == path.farthest;
}

MorseCheck morse_implies_quasiconvex_check(const TernaryOperator& op, const CoarseCertificate& cert,
                                           const VertexSet& subset, const MorseGauge& gauge,
                                           const MorseCheckOptions& options) {
  MorseCheck out;
  out.slack = options.slack;
  out.quasiconvexity = quasiconvexity(op, subset);
  const auto members = subset.members();

  std::vector<std::pair<Vertex, Vertex>> pairs;
  const std::size_t all = members.size() * (members.size() - 1) / 2;
  if (all <= options.max_pairs) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) pairs.emplace_back(members[i], members[j]);
  } else {
    CounterRng rng(options.seed, 0);
    for (std::size_t k = 0; k < options.max_pairs; ++k) {
      const auto i = rng.below(members.size());
      auto j = rng.below(members.size() - 1);
      if (j >= i) ++j;
      pairs.emplace_back(members[std::min(i, j)], members[std::max(i, j)]);
    }
  }
  out.pairs_tested = pairs.size();
  for (const auto& [a1, a2] : pairs) {
    for (auto p : coarse_interval(op, a1, a2).members.members()) {
      const auto t = through_point_quasigeodesic(op, cert, a1, a2, p);
      if (t.chain.empirical_L > out.c2_empirical) {
        out.c2_empirical = t.chain.empirical_L;
        out.c2_witness = {a1, a2, p};
      }
    }
  }
  out.gauge_value = gauge.N_at(out.c2_empirical);
  out.holds = out.quasiconvexity.constant <= out.gauge_value + options.slack;
  return out;
}

}  // namespace medianlab
