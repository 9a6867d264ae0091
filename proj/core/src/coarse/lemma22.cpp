#include "medianlab/coarse/lemma22.hpp"

#include <mutex>

#include "medianlab/coarse/coarse.hpp"
#include "medianlab/parallel.hpp"
#include "medianlab/rng.hpp"

namespace medianlab {

std::string_view status_name(PartStatus status) {
  switch (status) {
    case PartStatus::kExhaustive: return "exhaustive";
    case PartStatus::kSampled: return "sampled";
    case PartStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

VertexSet perturb_within(const GraphSpace& g, const VertexSet& set, Distance D, std::uint64_t seed,
                         std::uint64_t stream) {
  CounterRng rng(seed, stream);
  VertexSet out(g.size());
  set.for_each([&](Vertex a) {
    const auto near = ball(g, a, D).members();
    out.insert(near[rng.below(near.size())]);
  });
  return out;
}

namespace {

/// Intervals and their neighbourhoods, cached for small spaces.
class IntervalCache {
 public:
  IntervalCache(const TernaryOperator& op, const std::vector<int>& levels, bool precompute)
      : op_(op), g_(op.space()), n_(op.size()), levels_(levels) {
    if (!precompute) return;
    intervals_.resize(n_ * n_);
    hoods_.resize(levels_.size() * n_ * n_);
    map_chunks<char>(n_, [&](std::size_t begin, std::size_t end) {
      for (auto x = static_cast<Vertex>(begin); x < end; ++x)
        for (Vertex y = 0; y < n_; ++y) {
          intervals_[x * n_ + y] = compute_interval(x, y);
          const auto d = distances_to_set(g_, intervals_[x * n_ + y]);
          for (std::size_t l = 0; l < levels_.size(); ++l) {
            VertexSet s(n_);
            for (Vertex v = 0; v < n_; ++v)
              if (d[v] <= levels_[l]) s.insert(v);
            hoods_[(l * n_ + x) * n_ + y] = std::move(s);
          }
        }
      return char{};
    });
  }

  VertexSet interval(Vertex x, Vertex y) const {
    return intervals_.empty() ? compute_interval(x, y) : intervals_[x * n_ + y];
  }

  VertexSet hood(std::size_t level_index, Vertex x, Vertex y) const {
    if (!hoods_.empty()) return hoods_[(level_index * n_ + x) * n_ + y];
    return neighbourhood(g_, compute_interval(x, y), levels_[level_index]);
  }

 private:
  VertexSet compute_interval(Vertex x, Vertex y) const {
    VertexSet s(n_);
    for (Vertex z = 0; z < n_; ++z) s.insert(op_(x, y, z));
    return s;
  }

  const TernaryOperator& op_;
  const GraphSpace& g_;
  std::size_t n_;
  std::vector<int> levels_;
  std::vector<VertexSet> intervals_;
  std::vector<VertexSet> hoods_;
};

struct Best {
  Distance value = -1;
  std::vector<Vertex> tuple;
  std::vector<Vertex> set;
  std::uint64_t checked = 0;

  void offer(Distance v, std::initializer_list<Vertex> t) {
    if (v > value) {
      value = v;
      tuple.assign(t);
    }
  }
};

Best merge(const std::vector<Best>& chunks) {
  Best out;
  std::uint64_t total = 0;
  for (const auto& c : chunks) {
    total += c.checked;
    if (c.value > out.value) out = c;
  }
  out.checked = total;
  return out;
}

Distance diameter(const GraphSpace& g, const std::vector<Vertex>& pts, Vertex& u, Vertex& v) {
  Distance best = -1;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      const auto d = g.dist(pts[i], pts[j]);
      if (d > best) {
        best = d;
        u = pts[i];
        v = pts[j];
      }
    }
  return best;
}

Vertex pick(CounterRng& rng, const std::vector<Vertex>& pts) { return pts[rng.below(pts.size())]; }

std::uint64_t stream_for(int part, int level, std::uint64_t i) {
  return (static_cast<std::uint64_t>(part) << 56) ^ (static_cast<std::uint64_t>(level) << 48) ^ i;
}

class Suite {
 public:
  Suite(const TernaryOperator& op, const CoarseCertificate& cert, const LemmaOptions& options)
      : op_(op),
        g_(op.space()),
        n_(static_cast<Vertex>(op.size())),
        cert_(cert),
        opt_(options),
        cache_(op, options.levels, n_ <= *std::max_element(options.exhaustive_caps.begin() + 1,
                                                              options.exhaustive_caps.end())) {}

  LemmaSuite run() {
    LemmaSuite suite;
    for (int part = 1; part <= 6; ++part) {
      auto& out = suite.parts[part - 1];
      out.part = part;
      const bool exhaustive = n_ <= opt_.exhaustive_caps[part - 1];
      if (!exhaustive && opt_.samples == 0) {
        out.status = PartStatus::kSkipped;
        out.note = std::string(error_name(ErrorCode::kSizeCapExceeded)) + ": n=" + std::to_string(n_) +
                   " exceeds the exhaustive cap " + std::to_string(opt_.exhaustive_caps[part - 1]);
        continue;
      }
      out.status = exhaustive ? PartStatus::kExhaustive : PartStatus::kSampled;
      switch (part) {
        case 1: part1(out, exhaustive); break;
        case 2: part2(out, exhaustive); break;
        case 3: part3(out, exhaustive); break;
        case 4: part4(out, exhaustive); break;
        case 5: part5(out, exhaustive); break;
        case 6: part6(out, exhaustive); break;
      }
      finish(out);
    }
    return suite;
  }

 private:
  static void finish(LemmaPart& out) {
    out.K = Ratio{0};
    for (const auto& w : out.levels) out.K = std::max(out.K, Ratio(w.value, w.level + 1));
  }

  void record(LemmaPart& out, int level, const Best& b) {
    LemmaWitness w;
    w.level = level;
    w.value = std::max<Distance>(b.value, 0);
    w.tuple = b.tuple;
    w.set = b.set;
    out.levels.push_back(std::move(w));
    out.checked += b.checked;
  }

  void part1(LemmaPart& out, bool exhaustive) {
    auto eval = [&](Best& b, Vertex a, Vertex bb, Vertex c, Vertex d, Vertex e) {
      const auto lhs = op_(op_(a, bb, c), d, e);
      const auto rhs = op_(op_(a, d, e), op_(bb, d, e), c);
      ++b.checked;
      b.offer(g_.dist(lhs, rhs), {a, bb, c, d, e});
    };
    Best best;
    if (exhaustive) {
      best = merge(map_chunks<Best>(n_, [&](std::size_t begin, std::size_t end) {
        Best b;
        for (auto a = static_cast<Vertex>(begin); a < end; ++a)
          for (Vertex bb = 0; bb < n_; ++bb)
            for (Vertex c = 0; c < n_; ++c)
              for (Vertex d = 0; d < n_; ++d)
                for (Vertex e = d; e < n_; ++e) eval(b, a, bb, c, d, e);
        return b;
      }));
    } else {
      best = merge(map_chunks<Best>(opt_.samples, [&](std::size_t begin, std::size_t end) {
        Best b;
        for (std::size_t i = begin; i < end; ++i) {
          CounterRng rng(opt_.seed, stream_for(1, 0, i));
          Vertex t[5];
          for (auto& v : t) v = static_cast<Vertex>(rng.below(n_));
          eval(b, t[0], t[1], t[2], t[3], t[4]);
        }
        return b;
      }));
    }
    record(out, 0, best);
  }

  void part2(LemmaPart& out, bool exhaustive) {
    auto eval = [&](Best& b, Vertex x, Vertex y, Vertex p, Vertex xp, Vertex yp) {
      ++b.checked;
      b.offer(g_.dist(op_(xp, yp, p), p), {x, y, p, xp, yp});
    };
    Best best;
    if (exhaustive) {
      best = merge(map_chunks<Best>(n_, [&](std::size_t begin, std::size_t end) {
        Best b;
        for (auto x = static_cast<Vertex>(begin); x < end; ++x)
          for (Vertex y = 0; y < n_; ++y)
            cache_.interval(x, y).for_each([&](Vertex p) {
              const auto left = cache_.interval(x, p).members();
              const auto right = cache_.interval(p, y).members();
              for (auto xp : left)
                for (auto yp : right) eval(b, x, y, p, xp, yp);
            });
        return b;
      }));
    } else {
      best = merge(map_chunks<Best>(opt_.samples, [&](std::size_t begin, std::size_t end) {
        Best b;
        for (std::size_t i = begin; i < end; ++i) {
          CounterRng rng(opt_.seed, stream_for(2, 0, i));
          const auto x = static_cast<Vertex>(rng.below(n_));
          const auto y = static_cast<Vertex>(rng.below(n_));
          const auto p = op_(x, y, static_cast<Vertex>(rng.below(n_)));
          const auto xp = op_(x, p, static_cast<Vertex>(rng.below(n_)));
          const auto yp = op_(p, y, static_cast<Vertex>(rng.below(n_)));
          eval(b, x, y, p, xp, yp);
        }
        return b;
      }));
    }
    record(out, 0, best);
  }

  void part3(LemmaPart& out, bool exhaustive) {
    std::mutex mutex;
    bool holds = true;
    for (std::size_t l = 0; l < opt_.levels.size(); ++l) {
      auto eval = [&](Best& b, Vertex x, Vertex y, Vertex z) {
        auto s = cache_.hood(l, x, y);
        s &= cache_.hood(l, y, z);
        s &= cache_.hood(l, z, x);
        if (l == 0) {
          const auto m = op_(x, y, z);
          if (!cache_.interval(x, y).contains(m) || !cache_.interval(y, z).contains(m) ||
              !cache_.interval(z, x).contains(m)) {
            std::lock_guard lock(mutex);
            holds = false;
          }
        }
        Vertex u = x, v = x;
        const auto d = diameter(g_, s.members(), u, v);
        ++b.checked;
        b.offer(d, {x, y, z, u, v});
      };
      Best best;
      if (exhaustive) {
        best = merge(map_chunks<Best>(n_, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (auto x = static_cast<Vertex>(begin); x < end; ++x)
            for (Vertex y = x; y < n_; ++y)
              for (Vertex z = y; z < n_; ++z) eval(b, x, y, z);
          return b;
        }));
      } else {
        best = merge(map_chunks<Best>(opt_.samples, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(opt_.seed, stream_for(3, opt_.levels[l], i));
            const auto x = static_cast<Vertex>(rng.below(n_));
            const auto y = static_cast<Vertex>(rng.below(n_));
            const auto z = static_cast<Vertex>(rng.below(n_));
            eval(b, x, y, z);
          }
          return b;
        }));
      }
      record(out, opt_.levels[l], best);
    }
    out.holds = holds;
  }

  void part4(LemmaPart& out, bool exhaustive) {
    for (std::size_t l = 0; l < opt_.levels.size(); ++l) {
      // Worst point of [a,b] relative to [x,y]; w with mu(a,b,w) attaining it.
      auto worst_in = [&](const std::vector<Distance>& to_iv, Vertex a, Vertex b, Vertex& w_out) {
        Distance worst = -1;
        for (Vertex w = 0; w < n_; ++w) {
          const auto d = to_iv[op_(a, b, w)];
          if (d > worst) {
            worst = d;
            w_out = w;
          }
        }
        return worst;
      };
      Best best;
      if (exhaustive) {
        best = merge(map_chunks<Best>(n_, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (auto x = static_cast<Vertex>(begin); x < end; ++x)
            for (Vertex y = x; y < n_; ++y) {
              const auto to_iv = distances_to_set(g_, cache_.interval(x, y));
              const auto s = cache_.hood(l, x, y).members();
              for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i; j < s.size(); ++j) {
                  Vertex w = 0;
                  const auto d = worst_in(to_iv, s[i], s[j], w);
                  ++b.checked;
                  b.offer(d, {x, y, s[i], s[j], w});
                }
            }
          return b;
        }));
      } else {
        best = merge(map_chunks<Best>(opt_.samples, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(opt_.seed, stream_for(4, opt_.levels[l], i));
            const auto x = static_cast<Vertex>(rng.below(n_));
            const auto y = static_cast<Vertex>(rng.below(n_));
            const auto to_iv = distances_to_set(g_, cache_.interval(x, y));
            const auto s = cache_.hood(l, x, y).members();
            const auto a = pick(rng, s);
            const auto c = pick(rng, s);
            Vertex w = 0;
            const auto d = worst_in(to_iv, a, c, w);
            ++b.checked;
            b.offer(d, {x, y, a, c, w});
          }
          return b;
        }));
      }
      record(out, opt_.levels[l], best);
    }
  }

  void part5(LemmaPart& out, bool exhaustive) {
    for (std::size_t l = 0; l < opt_.levels.size(); ++l) {
      auto corner = [&](Vertex x, Vertex y, Vertex z) { return (cache_.hood(l, x, y) & cache_.hood(l, x, z)).members(); };
      Best best;
      if (exhaustive) {
        best = merge(map_chunks<Best>(n_, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (auto x = static_cast<Vertex>(begin); x < end; ++x)
            for (Vertex y = x; y < n_; ++y)
              for (Vertex z = y; z < n_; ++z) {
                const auto m = op_(x, y, z);
                const auto A = corner(x, y, z);
                const auto B = corner(y, z, x);
                const auto C = corner(z, x, y);
                for (auto a : A)
                  for (auto bb : B)
                    for (auto c : C) {
                      ++b.checked;
                      b.offer(g_.dist(op_(a, bb, c), m), {x, y, z, a, bb, c});
                    }
              }
          return b;
        }));
      } else {
        best = merge(map_chunks<Best>(opt_.samples, [&](std::size_t begin, std::size_t end) {
          Best b;
          for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(opt_.seed, stream_for(5, opt_.levels[l], i));
            const auto x = static_cast<Vertex>(rng.below(n_));
            const auto y = static_cast<Vertex>(rng.below(n_));
            const auto z = static_cast<Vertex>(rng.below(n_));
            const auto a = pick(rng, corner(x, y, z));
            const auto bb = pick(rng, corner(y, z, x));
            const auto c = pick(rng, corner(z, x, y));
            ++b.checked;
            b.offer(g_.dist(op_(a, bb, c), op_(x, y, z)), {x, y, z, a, bb, c});
          }
          return b;
        }));
      }
      record(out, opt_.levels[l], best);
    }
  }

  void part6(LemmaPart& out, bool exhaustive) {
    // Candidate sets A = [x,y]; all pairs when exhaustive, seeded pairs otherwise.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (exhaustive) {
      for (Vertex x = 0; x < n_; ++x)
        for (Vertex y = x; y < n_; ++y) pairs.emplace_back(x, y);
    } else {
      for (std::size_t i = 0; i < opt_.part6_sets; ++i) {
        CounterRng rng(opt_.seed, stream_for(6, 255, i));
        const auto x = static_cast<Vertex>(rng.below(n_));
        const auto y = static_cast<Vertex>(rng.below(n_));
        pairs.emplace_back(std::min(x, y), std::max(x, y));
      }
    }
    std::vector<Distance> qc(pairs.size());
    map_chunks<char>(pairs.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        qc[i] = quasiconvexity(op_, cache_.interval(pairs[i].first, pairs[i].second)).constant;
      return char{};
    });
    bool holds = true;
    for (auto D : opt_.levels) {
      Best best = merge(map_chunks<Best>(pairs.size(), [&](std::size_t begin, std::size_t end) {
        Best b;
        for (std::size_t i = begin; i < end; ++i) {
          if (qc[i] > D) continue;
          const auto [x, y] = pairs[i];
          const auto B = perturb_within(g_, cache_.interval(x, y), D, opt_.seed,
                                        stream_for(6, D, static_cast<std::uint64_t>(x) * n_ + y));
          const auto r = quasiconvexity(op_, B);
          ++b.checked;
          if (r.constant > b.value) {
            b.value = r.constant;
            b.tuple = {x, y, r.a1, r.a2, r.z};
            b.set = B.members();
          }
        }
        return b;
      }));
      record(out, D, best);
      auto& w = out.levels.back();
      w.bound = Ratio{2} * (cert_.C * Ratio{D} + cert_.C + Ratio{D});
      if (best.value >= 0 && Ratio{w.value} > w.bound) holds = false;
    }
    out.holds = holds;
  }

  const TernaryOperator& op_;
  const GraphSpace& g_;
  Vertex n_;
  CoarseCertificate cert_;
  LemmaOptions opt_;
  IntervalCache cache_;
};

}  // namespace

LemmaSuite lemma22_suite(const TernaryOperator& op, const CoarseCertificate& cert, const LemmaOptions& options) {
  if (options.levels.empty()) throw Error(ErrorCode::kInvalidParams, "lemma suite needs at least one level");
  for (auto l : options.levels)
    if (l < 0) throw Error(ErrorCode::kInvalidParams, "levels must be nonnegative");
  return Suite(op, cert, options).run();
}

Distance evaluate_lemma_witness(const TernaryOperator& op, int part, const LemmaWitness& w) {
  const auto& g = op.space();
  const auto& t = w.tuple;
  const auto n = static_cast<Vertex>(op.size());
  for (auto v : t)
    if (v >= n) return -1;
  auto in_interval = [&](Vertex v, Vertex x, Vertex y) {
    for (Vertex z = 0; z < n; ++z)
      if (op(x, y, z) == v) return true;
    return false;
  };
  auto hood = [&](Vertex x, Vertex y) { return neighbourhood(g, algebra_interval(op, x, y).members, w.level); };
  switch (part) {
    case 1:
      if (t.size() != 5) return -1;
      return g.dist(op(op(t[0], t[1], t[2]), t[3], t[4]), op(op(t[0], t[3], t[4]), op(t[1], t[3], t[4]), t[2]));
    case 2:
      if (t.size() != 5 || !in_interval(t[2], t[0], t[1]) || !in_interval(t[3], t[0], t[2]) ||
          !in_interval(t[4], t[2], t[1]))
        return -1;
      return g.dist(op(t[3], t[4], t[2]), t[2]);
    case 3: {
      if (t.size() != 5) return -1;
      const auto s = hood(t[0], t[1]) & hood(t[1], t[2]) & hood(t[2], t[0]);
      if (!s.contains(t[3]) || !s.contains(t[4])) return -1;
      return g.dist(t[3], t[4]);
    }
    case 4: {
      if (t.size() != 5) return -1;
      const auto s = hood(t[0], t[1]);
      if (!s.contains(t[2]) || !s.contains(t[3])) return -1;
      const auto to_iv = distances_to_set(g, algebra_interval(op, t[0], t[1]).members);
      return to_iv[op(t[2], t[3], t[4])];
    }
    case 5: {
      if (t.size() != 6) return -1;
      const auto xy = hood(t[0], t[1]), yz = hood(t[1], t[2]), zx = hood(t[2], t[0]);
      if (!(xy.contains(t[3]) && zx.contains(t[3]) && yz.contains(t[4]) && xy.contains(t[4]) &&
            zx.contains(t[5]) && yz.contains(t[5])))
        return -1;
      return g.dist(op(t[3], t[4], t[5]), op(t[0], t[1], t[2]));
    }
    case 6: {
      if (t.size() != 5 || w.set.empty()) return -1;
      for (auto v : w.set)
        if (v >= n) return -1;
      const auto A = algebra_interval(op, t[0], t[1]).members;
      const auto B = VertexSet::of(n, w.set);
      // Hausdorff distance at most D in both directions.
      const auto to_a = distances_to_set(g, A);
      const auto to_b = distances_to_set(g, B);
      for (Vertex v = 0; v < n; ++v)
        if ((B.contains(v) && to_a[v] > w.level) || (A.contains(v) && to_b[v] > w.level)) return -1;
      if (!B.contains(t[2]) || !B.contains(t[3])) return -1;
      return to_b[op(t[2], t[3], t[4])];
    }
    default: return -1;
  }
}

}  // namespace medianlab
