#include "medianlab/coarse/certificate.hpp"

#include "medianlab/parallel.hpp"

namespace medianlab {

std::optional<std::array<Vertex, 3>> find_m0_violation(const DenseTable& t) {
  const auto n = static_cast<Vertex>(t.n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (t(x, x, y) != x) return std::array<Vertex, 3>{x, x, y};
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) {
        const auto v = t(x, y, z);
        if (t(y, x, z) != v || t(x, z, y) != v) return std::array<Vertex, 3>{x, y, z};
      }
  return std::nullopt;
}

CoarseCertificate certificate_with(Ratio C) {
  CoarseCertificate cert;
  cert.C = C < Ratio{1} ? Ratio{1} : C;
  return cert;
}

Distance cm1_at(const TernaryOperator& op, Vertex x, Vertex p, Vertex y, Vertex z) {
  return op.space().dist(op(op(x, p, y), p, z), op(x, p, op(y, p, z)));
}

Ratio cm2_at(const TernaryOperator& op, Vertex x, Vertex p, Vertex y, Vertex z) {
  const auto& g = op.space();
  return Ratio(g.dist(op(x, y, z), op(p, y, z)), g.dist(x, p) + 1);
}

CoarseCertificate certify(const TernaryOperator& op, const CertifyOptions& options) {
  const auto t = op.materialize(options.max_vertices);
  if (auto bad = find_m0_violation(t)) {
    const auto [x, y, z] = *bad;
    throw Error(ErrorCode::kM0Violated,
                "operator '" + op.label() + "' breaks (M0) at (" + std::to_string(x) + "," + std::to_string(y) +
                    "," + std::to_string(z) + ")",
                {x, y, z});
  }
  const auto& g = op.space();
  const auto n = t.n;
  const auto* D = g.matrix().data();
  const auto* T = t.values.data();

  struct Cm1 {
    Distance best = 0;
    std::array<Vertex, 4> witness{};
  };
  // Swapping x and z swaps the two sides of (CM1), so z >= x suffices.
  const auto cm1_chunks = map_chunks<Cm1>(n, [&](std::size_t begin, std::size_t end) {
    Cm1 out;
    bool first = true;
    for (std::size_t p = begin; p < end; ++p)
      for (std::size_t x = 0; x < n; ++x) {
        const auto* row_xp = T + (x * n + p) * n;
        for (std::size_t y = 0; y < n; ++y) {
          const auto* row_ap = T + (static_cast<std::size_t>(row_xp[y]) * n + p) * n;
          const auto* row_yp = T + (y * n + p) * n;
          for (std::size_t z = x; z < n; ++z) {
            const auto lhs = row_ap[z];
            const auto rhs = row_xp[row_yp[z]];
            const auto d = D[static_cast<std::size_t>(lhs) * n + rhs];
            if (d > out.best || first) {
              out.best = d;
              out.witness = {static_cast<Vertex>(x), static_cast<Vertex>(p), static_cast<Vertex>(y),
                             static_cast<Vertex>(z)};
              first = false;
            }
          }
        }
      }
    return out;
  });

  struct Cm2 {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::array<Vertex, 4> witness{};
  };
  // The ratio is symmetric in (x, p) and in (y, z); x = p contributes 0.
  const auto cm2_chunks = map_chunks<Cm2>(n, [&](std::size_t begin, std::size_t end) {
    Cm2 out;
    for (std::size_t x = begin; x < end; ++x)
      for (std::size_t p = x + 1; p < n; ++p) {
        const std::int64_t den = D[x * n + p] + 1;
        for (std::size_t y = 0; y < n; ++y) {
          const auto* row_x = T + (x * n + y) * n;
          const auto* row_p = T + (p * n + y) * n;
          for (std::size_t z = y; z < n; ++z) {
            const std::int64_t num = D[static_cast<std::size_t>(row_x[z]) * n + row_p[z]];
            if (num * out.den > out.num * den) {
              out.num = num;
              out.den = den;
              out.witness = {static_cast<Vertex>(x), static_cast<Vertex>(p), static_cast<Vertex>(y),
                             static_cast<Vertex>(z)};
            }
          }
        }
      }
    return out;
  });

  CoarseCertificate cert;
  cert.cm1_witness = cm1_chunks.front().witness;
  for (const auto& c : cm1_chunks)
    if (c.best > cert.cm1_error) {
      cert.cm1_error = c.best;
      cert.cm1_witness = c.witness;
    }
  Cm2 best2;
  for (const auto& c : cm2_chunks)
    if (c.num * best2.den > best2.num * c.den) best2 = c;
  cert.cm2_constant = Ratio(best2.num, best2.den);
  cert.cm2_witness = best2.witness;
  cert.C = std::max({Ratio{1}, Ratio{cert.cm1_error}, cert.cm2_constant});
  return cert;
}

}  // namespace medianlab
