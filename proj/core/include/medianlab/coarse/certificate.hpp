#pragma once

#include <array>
#include <optional>

#include "medianlab/median/median.hpp"

namespace medianlab {

/// Largest vertex count for which sweeps materialize a dense table.
inline constexpr std::size_t kSweepTableCap = 320;

struct CertifyOptions {
  std::size_t max_vertices = kSweepTableCap;
};

/// Axiom constants of a ternary operator.
///
///   cm1 = max d(mu(mu(x,p,y),p,z), mu(x,p,mu(y,p,z)))
///   cm2 = max d(mu(x,y,z), mu(p,y,z)) / (d(x,p) + 1)
///   C   = max(1, cm1, cm2)
///
/// so that (CM1) and (CM2) hold with C, and no smaller C' works for both.
struct CoarseCertificate {
  bool m0_exact = true;
  Distance cm1_error = 0;
  /// (x, p, y, z) attaining cm1.
  std::array<Vertex, 4> cm1_witness{};
  Ratio cm2_constant;
  /// (x, p, y, z) attaining cm2.
  std::array<Vertex, 4> cm2_witness{};
  Ratio C{1};

  /// Largest integer step allowed by the 2C bound.
  Distance step_bound() const { return static_cast<Distance>((C * Ratio{2}).floor()); }
};

/// First triple breaking symmetry or localisation, if any.
std::optional<std::array<Vertex, 3>> find_m0_violation(const DenseTable& table);

/// Throws M0Violated (with the triple) when (M0) fails, SizeCapExceeded when
/// the operator is too large to sweep.
CoarseCertificate certify(const TernaryOperator& op, const CertifyOptions& options = {});

/// Builds a certificate from a claimed C (for example, one read back from a
/// report) without sweeping.
CoarseCertificate certificate_with(Ratio C);

/// The two sides of (CM1) at a tuple, and the (CM2) ratio at a tuple.
Distance cm1_at(const TernaryOperator& op, Vertex x, Vertex p, Vertex y, Vertex z);
Ratio cm2_at(const TernaryOperator& op, Vertex x, Vertex p, Vertex y, Vertex z);

}  // namespace medianlab
