#include "medianlab/median/median.hpp"

#include <bit>

#include "medianlab/parallel.hpp"

namespace medianlab {

namespace {

struct RootedTree {
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> depth;

  Vertex lca(Vertex a, Vertex b) const {
    while (depth[a] > depth[b]) a = parent[a];
    while (depth[b] > depth[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    return a;
  }
};

}  // namespace

TernaryOperator tree_median(SpacePtr tree, const OperatorOptions& options) {
  if (!tree->is_tree())
    throw Error(ErrorCode::kNotATree, "space has " + std::to_string(tree->edges().size()) + " edges on " +
                                          std::to_string(tree->size()) + " vertices; a tree has n-1");
  const auto n = tree->size();
  auto rooted = std::make_shared<RootedTree>();
  rooted->parent.assign(n, 0);
  rooted->depth.assign(n, 0);
  std::vector<Vertex> queue{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    for (const auto& nb : tree->neighbors(u)) {
      if (seen[nb.to]) continue;
      seen[nb.to] = 1;
      rooted->parent[nb.to] = u;
      rooted->depth[nb.to] = rooted->depth[u] + 1;
      queue.push_back(nb.to);
    }
  }
  auto opts = options;
  opts.symmetric = true;
  return TernaryOperator::from_rule(
      std::move(tree), OperatorKind::kExactMedian, "tree-median",
      [rooted](Vertex x, Vertex y, Vertex z) {
        const auto a = rooted->lca(x, y);
        const auto b = rooted->lca(y, z);
        const auto c = rooted->lca(x, z);
        Vertex best = a;
        if (rooted->depth[b] > rooted->depth[best]) best = b;
        if (rooted->depth[c] > rooted->depth[best]) best = c;
        return best;
      },
      opts);
}

namespace {

struct IntervalBits {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  const std::uint64_t* at(Vertex x, Vertex y) const {
    return bits.data() + (static_cast<std::size_t>(x) * n + y) * words;
  }

  /// Returns the number of common members (saturating at 2) and the first one.
  std::pair<int, Vertex> meet(Vertex x, Vertex y, Vertex z) const {
    const auto* a = at(x, y);
    const auto* b = at(y, z);
    const auto* c = at(x, z);
    int count = 0;
    Vertex first = 0;
    for (std::size_t w = 0; w < words && count < 2; ++w) {
      const auto m = a[w] & b[w] & c[w];
      if (!m) continue;
      if (count == 0) first = static_cast<Vertex>(w * 64 + std::countr_zero(m));
      count += std::popcount(m) > 1 ? 2 : 1;
    }
    return {std::min(count, 2), first};
  }
};

}  // namespace

TernaryOperator median_graph_median(SpacePtr space, const MedianGraphOptions& options) {
  const auto n = space->size();
  if (n > options.max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded, "median-graph recognition is capped at " +
                                                 std::to_string(options.max_vertices) + " vertices");
  auto iv = std::make_shared<IntervalBits>();
  iv->n = n;
  iv->words = (n + 63) / 64;
  iv->bits.assign(n * n * iv->words, 0);
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      const auto rx = space->row(static_cast<Vertex>(x));
      for (std::size_t y = 0; y < n; ++y) {
        const auto ry = space->row(static_cast<Vertex>(y));
        const auto dxy = rx[y];
        auto* out = iv->bits.data() + (x * n + y) * iv->words;
        for (std::size_t z = 0; z < n; ++z)
          if (rx[z] + ry[z] == dxy) out[z >> 6] |= std::uint64_t{1} << (z & 63);
      }
    }
    return char{};
  });

  using Failure = std::optional<std::array<Vertex, 3>>;
  const auto failures = map_chunks<Failure>(n, [&](std::size_t begin, std::size_t end) -> Failure {
    for (std::size_t x = begin; x < end; ++x)
      for (std::size_t y = x; y < n; ++y)
        for (std::size_t z = y; z < n; ++z) {
          const auto [count, first] = iv->meet(static_cast<Vertex>(x), static_cast<Vertex>(y), static_cast<Vertex>(z));
          if (count != 1)
            return std::array<Vertex, 3>{static_cast<Vertex>(x), static_cast<Vertex>(y), static_cast<Vertex>(z)};
        }
    return std::nullopt;
  });
  for (const auto& f : failures) {
    if (!f) continue;
    const auto [x, y, z] = *f;
    throw Error(ErrorCode::kNotMedianGraph,
                "triple (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
                    ") does not have exactly one vertex in all three intervals",
                {x, y, z});
  }
  auto opts = options.op;
  opts.symmetric = true;
  return TernaryOperator::from_rule(
      std::move(space), OperatorKind::kExactMedian, "median-graph",
      [iv](Vertex x, Vertex y, Vertex z) { return iv->meet(x, y, z).second; }, opts);
}

TernaryOperator product_median(const ProductSpace& product, const std::vector<TernaryOperator>& factors,
                               std::string label, const OperatorOptions& options) {
  if (factors.size() != product.arity())
    throw Error(ErrorCode::kArityMismatch, "product has " + std::to_string(product.arity()) + " factors but " +
                                               std::to_string(factors.size()) + " operators were given");
  bool symmetric = true;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!factors[i].space().same_as(*product.factors[i]))
      throw Error(ErrorCode::kArityMismatch, "operator " + std::to_string(i) + " lives on a different space");
    symmetric = symmetric && factors[i].symmetric();
  }
  if (label.empty()) {
    label = "product(";
    for (std::size_t i = 0; i < factors.size(); ++i) label += (i ? "," : "") + factors[i].label();
    label += ")";
  }
  std::vector<Vertex> radix;
  for (const auto& f : product.factors) radix.push_back(static_cast<Vertex>(f->size()));
  auto opts = options;
  opts.symmetric = symmetric;
  return TernaryOperator::from_rule(
      product.space, OperatorKind::kProduct, std::move(label),
      [factors, radix](Vertex x, Vertex y, Vertex z) {
        Vertex out = 0;
        Vertex scale = 1;
        for (std::size_t i = radix.size(); i-- > 0;) {
          const auto r = radix[i];
          out += factors[i](x % r, y % r, z % r) * scale;
          scale *= r;
          x /= r;
          y /= r;
          z /= r;
        }
        return out;
      },
      opts);
}

AxiomReport check_median_axioms(const TernaryOperator& op, std::size_t cap) {
  const auto t = op.materialize(cap);
  const auto n = t.n;
  AxiomReport report;

  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (t(x, x, y) != x) return {false, "M0-localisation", {x, x, y}, t(x, x, y), x};

  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) {
        const auto v = t(x, y, z);
        for (auto w : {t(x, z, y), t(y, x, z), t(y, z, x), t(z, x, y), t(z, y, x)})
          if (w != v) return {false, "M0-symmetry", {x, y, z}, v, w};
      }

  using Failure = std::optional<AxiomReport>;
  const auto failures = map_chunks<Failure>(n, [&](std::size_t begin, std::size_t end) -> Failure {
    for (auto x = static_cast<Vertex>(begin); x < end; ++x)
      for (Vertex p = 0; p < n; ++p)
        for (Vertex y = 0; y < n; ++y) {
          const auto xpy = t(x, p, y);
          for (Vertex z = 0; z < n; ++z) {
            const auto lhs = t(xpy, p, z);
            const auto rhs = t(x, p, t(y, p, z));
            if (lhs != rhs) return AxiomReport{false, "M1", {x, p, y, z}, lhs, rhs};
          }
        }
    return std::nullopt;
  });
  for (const auto& f : failures)
    if (f) return *f;
  return report;
}

IntervalSet algebra_interval(const TernaryOperator& op, Vertex x, Vertex y) {
  IntervalSet out;
  out.x = x;
  out.y = y;
  out.members = VertexSet(op.size());
  out.projection.resize(op.size());
  for (Vertex z = 0; z < op.size(); ++z) {
    out.projection[z] = op(x, y, z);
    out.members.insert(out.projection[z]);
  }
  return out;
}

ConvexityResult is_convex(const TernaryOperator& op, const VertexSet& subset) {
  const auto members = subset.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j)
      for (Vertex z = 0; z < op.size(); ++z) {
        const auto m = op(members[i], members[j], z);
        if (!subset.contains(m)) return {false, members[i], members[j], m};
      }
  return {};
}

bool is_cube_embedding(const TernaryOperator& op, const std::vector<Vertex>& cube) {
  const auto k = cube.size();
  if (k == 0 || !std::has_single_bit(k)) return false;
  for (auto v : cube)
    if (v >= op.size()) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (cube[i] == cube[j]) return false;
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t u = 0; u < k; ++u)
        if (op(cube[s], cube[t], cube[u]) != cube[(s & t) | (t & u) | (s & u)]) return false;
  return true;
}

namespace {

/// Corners of a candidate cube: bit i is atom i, larger sets are joins
/// relative to the top.
std::vector<Vertex> corners(const DenseTable& t, Vertex o, Vertex a, const std::vector<Vertex>& atoms) {
  const std::size_t k = std::size_t{1} << atoms.size();
  std::vector<Vertex> phi(k);
  phi[0] = o;
  for (std::size_t s = 1; s < k; ++s) {
    const auto high = static_cast<std::size_t>(std::bit_width(s) - 1);
    const auto rest = s & ~(std::size_t{1} << high);
    phi[s] = rest == 0 ? atoms[high] : t(phi[rest], atoms[high], a);
  }
  return phi;
}

bool majority_closed(const DenseTable& t, const std::vector<Vertex>& phi) {
  const auto k = phi.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (phi[i] == phi[j]) return false;
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v)
        if (t(phi[s], phi[u], phi[v]) != phi[(s & u) | (u & v) | (s & v)]) return false;
  return true;
}

std::optional<std::vector<Vertex>> find_cube(const DenseTable& t, std::size_t r) {
  const auto n = static_cast<Vertex>(t.n);
  const std::size_t need = std::size_t{1} << r;
  std::vector<char> in(n);
  for (Vertex o = 0; o < n; ++o) {
    for (Vertex a = 0; a < n; ++a) {
      if (a == o) continue;
      std::fill(in.begin(), in.end(), 0);
      std::size_t size = 0;
      for (Vertex z = 0; z < n; ++z) {
        const auto m = t(o, a, z);
        if (!in[m]) ++size;
        in[m] = 1;
      }
      if (size < need) continue;
      if (r == 1) return std::vector<Vertex>{o, a};
      std::vector<Vertex> cand;
      for (Vertex v = 0; v < n; ++v)
        if (in[v] && v != o && v != a) cand.push_back(v);
      for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
          if (t(o, cand[i], cand[j]) != o) continue;
          if (r == 2) {
            auto phi = corners(t, o, a, {cand[i], cand[j]});
            if (phi.back() == a && majority_closed(t, phi)) return phi;
            continue;
          }
          for (std::size_t k = j + 1; k < cand.size(); ++k) {
            if (t(o, cand[i], cand[k]) != o || t(o, cand[j], cand[k]) != o) continue;
            auto phi = corners(t, o, a, {cand[i], cand[j], cand[k]});
            if (phi.back() == a && majority_closed(t, phi)) return phi;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RankEstimate rank_estimate(const TernaryOperator& op, const RankOptions& options) {
  if (options.max_rank > 3) throw Error(ErrorCode::kInvalidParams, "rank search supports max_rank <= 3");
  if (op.size() > options.max_vertices)
    throw Error(ErrorCode::kSizeCapExceeded,
                "rank search is capped at " + std::to_string(options.max_vertices) + " vertices");
  const auto t = op.materialize(options.max_vertices);
  RankEstimate best{0, {0}};
  for (std::size_t r = 1; r <= options.max_rank; ++r) {
    auto cube = find_cube(t, r);
    if (!cube) break;
    best = {r, std::move(*cube)};
  }
  return best;
}

}  // namespace medianlab
