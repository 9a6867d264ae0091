#include "medianlab/coarse/quasigeodesic.hpp"

#include "medianlab/coarse/coarse.hpp"

namespace medianlab {

void measure_chain(const GraphSpace& g, QuasiChain& chain) {
  const auto& u = chain.points;
  chain.max_step = 0;
  chain.index_excess = u.size() > 1 ? std::numeric_limits<std::int64_t>::min() : 0;
  Ratio worst{1};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i + 1 < u.size()) chain.max_step = std::max(chain.max_step, g.dist(u[i], u[i + 1]));
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const std::int64_t gap = static_cast<std::int64_t>(j - i);
      const std::int64_t d = g.dist(u[i], u[j]);
      chain.index_excess = std::max(chain.index_excess, gap - d);
      worst = std::max({worst, Ratio(d, gap + 1), Ratio(gap, d + 1)});
    }
  }
  chain.empirical_L = worst;
}

bool satisfies_parameters(const GraphSpace& g, const QuasiChain& chain, std::int64_t slack) {
  const auto& u = chain.points;
  const Ratio A = chain.A + Ratio{slack};
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const Ratio gap{static_cast<std::int64_t>(j - i)};
      const Ratio d{g.dist(u[i], u[j])};
      if (d > chain.L * gap + A || gap > chain.L * d + A) return false;
    }
  return true;
}

namespace {

std::vector<Vertex> minimal_chain(const TernaryOperator& op, Distance step, Vertex x, Vertex y) {
  const auto& g = op.space();
  const auto members = coarse_interval(op, x, y).members.members();
  std::vector<std::int64_t> parent(g.size(), -1);
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> queue{x};
  seen[x] = 1;
  for (std::size_t head = 0; head < queue.size() && !seen[y]; ++head) {
    const auto u = queue[head];
    const auto row = g.row(u);
    for (auto v : members) {
      if (seen[v] || row[v] > step) continue;
      seen[v] = 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (!seen[y])
    throw Error(ErrorCode::kNoChain,
                "no chain with steps <= " + std::to_string(step) + " joins " + std::to_string(x) + " to " +
                    std::to_string(y) + " inside their interval",
                {x, y});
  std::vector<Vertex> chain{y};
  while (chain.back() != x) chain.push_back(static_cast<Vertex>(parent[chain.back()]));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

QuasiChain extract_quasigeodesic(const TernaryOperator& op, const CoarseCertificate& cert, Vertex x, Vertex y) {
  QuasiChain chain;
  chain.points = minimal_chain(op, cert.step_bound(), x, y);
  chain.L = cert.C * Ratio{2};
  chain.A = cert.C * Ratio{4};
  measure_chain(op.space(), chain);
  return chain;
}

ThroughPointChain through_point_quasigeodesic(const TernaryOperator& op, const CoarseCertificate& cert, Vertex x,
                                              Vertex y, Vertex p) {
  const auto& g = op.space();
  ThroughPointChain out;
  out.projected = op(x, y, p);
  out.adjustment = g.dist(p, out.projected);
  const auto step = cert.step_bound();
  auto first = minimal_chain(op, step, x, out.projected);
  const auto second = minimal_chain(op, step, out.projected, y);
  first.insert(first.end(), second.begin() + 1, second.end());

  const auto interval = coarse_interval(op, x, y);
  auto& pts = out.chain.points;
  for (auto u : first) {
    const auto v = interval.members.contains(u) ? u : interval.projection[u];
    if (pts.empty() || pts.back() != v) pts.push_back(v);
  }
  out.passes_within = std::numeric_limits<Distance>::max();
  for (auto u : pts) {
    out.passes_within = std::min(out.passes_within, g.dist(u, p));
    out.inside_interval = out.inside_interval && interval.members.contains(u);
  }
  measure_chain(g, out.chain);
  out.chain.L = out.chain.empirical_L;
  out.chain.A = out.chain.empirical_L;
  return out;
}

}  // namespace medianlab
