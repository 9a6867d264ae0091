#pragma once

#include <vector>

#include "medianlab/coarse/coarse.hpp"
#include "medianlab/coarse/quasigeodesic.hpp"

namespace medianlab {

/// One corpus path: a detoured geodesic between two points of the subset.
struct MorsePath {
  std::vector<Vertex> points;
  std::vector<Vertex> waypoints;
  /// Least L for which the path is an (L, L)-quasigeodesic.
  Ratio empirical_L{1};
  /// max_i d(points[i], A), attained first at index `farthest`.
  Distance excursion = 0;
  std::size_t farthest = 0;
};

struct MorseLevel {
  Ratio L{1};
  /// Empirical gauge: max excursion over corpus paths with empirical L <= L.
  Distance N = 0;
  std::size_t accepted = 0;
  /// Corpus index of the first path attaining N.
  std::size_t witness = 0;
};

struct MorseGauge {
  std::vector<Vertex> subset;
  std::vector<MorseLevel> levels;
  std::vector<MorsePath> corpus;
  std::uint64_t seed = 0;

  /// Gauge at an arbitrary L from the stored corpus. Throws EmptyCorpus when
  /// no corpus path qualifies.
  Distance N_at(Ratio L) const;
};

struct MorseOptions {
  std::vector<Ratio> L_values{Ratio{1}, Ratio{2}, Ratio{3}};
  std::size_t corpus_size = 200;
  std::uint64_t seed = 1;
  /// Waypoints per path are drawn from 0..max_waypoints.
  std::size_t max_waypoints = 2;
};

/// Generates the seeded corpus (path i uses stream i) and measures the gauge
/// per L. Waypoints are drawn from a ball around a random point of the
/// geodesic, with radius up to half its length plus one. Throws EmptySubset
/// for an empty subset and EmptyCorpus when some L accepts no path.
MorseGauge morse_gauge(const GraphSpace& space, const VertexSet& subset, const MorseOptions& options = {});

/// Recomputes a stored path's empirical L and excursion, and checks that it
/// is a walk with both endpoints in the subset.
bool recheck_morse_path(const GraphSpace& space, const VertexSet& subset, const MorsePath& path);

struct MorseCheckOptions {
  Distance slack = 2;
  /// Pairs of the subset used for the through-point parameter; above this
  /// many, pairs are sampled with the seed.
  std::size_t max_pairs = 300;
  std::uint64_t seed = 1;
};

struct MorseCheck {
  QuasiconvexityReport quasiconvexity;
  /// Largest empirical L of the through-point chains over the tested
  /// (a1, a2, p) with p in [a1,a2].
  Ratio c2_empirical{1};
  std::array<Vertex, 3> c2_witness{};
  Distance gauge_value = 0;
  Distance slack = 2;
  bool holds = true;
  std::size_t pairs_tested = 0;
};

/// quasiconvexity(op, A) <= gauge.N(C2_emp) + slack.
MorseCheck morse_implies_quasiconvex_check(const TernaryOperator& op, const CoarseCertificate& cert,
                                           const VertexSet& subset, const MorseGauge& gauge,
                                           const MorseCheckOptions& options = {});

}  // namespace medianlab
