#pragma once

#include <array>
#include <string>
#include <vector>

#include "medianlab/coarse/certificate.hpp"

namespace medianlab {

enum class PartStatus { kExhaustive, kSampled, kSkipped };
std::string_view status_name(PartStatus status);

/// One measured value of a lemma part, with the tuple attaining it.
///
///   part 1: tuple (a,b,c,d,e);  value d(mu(mu(a,b,c),d,e), mu(mu(a,d,e),mu(b,d,e),c))
///   part 2: tuple (x,y,p,x',y'); value d(mu(x',y',p), p)
///   part 3: tuple (x,y,z,u,v);  u, v in all three N_R intervals, value d(u,v)
///   part 4: tuple (x,y,a,b,w);  a, b in N_R([x,y]), value d(mu(a,b,w), [x,y])
///   part 5: tuple (x,y,z,a,b,c); value d(mu(a,b,c), mu(x,y,z))
///   part 6: tuple (x,y,b1,b2,w); A = [x,y], `set` = B within Hausdorff D of A,
///           value d(mu(b1,b2,w), B)
struct LemmaWitness {
  /// R for parts 3-5, D for part 6, 0 otherwise.
  int level = 0;
  Distance value = 0;
  std::vector<Vertex> tuple;
  std::vector<Vertex> set;
  /// Part 6 only: 2(CD + C + D).
  Ratio bound;
};

struct LemmaPart {
  int part = 0;
  PartStatus status = PartStatus::kSkipped;
  /// Least K with value <= K*level + K at every tested level.
  Ratio K;
  std::vector<LemmaWitness> levels;
  std::uint64_t checked = 0;
  /// Part 3: mu(x,y,z) was in all three intervals for every triple.
  /// Part 6: every value stayed within its bound.
  bool holds = true;
  std::string note;
};

struct LemmaOptions {
  /// Parts run exhaustively up to these vertex counts, and are sampled above.
  std::array<std::size_t, 6> exhaustive_caps{24, 40, 60, 40, 16, 40};
  /// Samples per part (and per level) above the cap; 0 skips those parts.
  std::uint64_t samples = 4000;
  std::uint64_t seed = 1;
  std::vector<int> levels{0, 1, 2};
  /// Sets tried by part 6 when sampling.
  std::size_t part6_sets = 64;
};

struct LemmaSuite {
  std::array<LemmaPart, 6> parts;
};

LemmaSuite lemma22_suite(const TernaryOperator& op, const CoarseCertificate& cert, const LemmaOptions& options = {});

/// Part 6 perturbation of a set: each member a is replaced by a vertex of
/// B(a, D) chosen by the counter stream; the result is within Hausdorff
/// distance D of the input.
VertexSet perturb_within(const GraphSpace& space, const VertexSet& set, Distance D, std::uint64_t seed,
                         std::uint64_t stream);

/// Re-evaluates a witness of the given part. Returns the recomputed value, or
/// -1 when the tuple does not satisfy the part's membership conditions.
Distance evaluate_lemma_witness(const TernaryOperator& op, int part, const LemmaWitness& witness);

}  // namespace medianlab
