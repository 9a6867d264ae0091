// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "medianlab/coarse/quasigeodesic.hpp"
#include "medianlab/report/report.hpp"
#include "oracles.hpp"

using namespace medianlab;

namespace {

// Pinned tolerances.
constexpr Distance kSlack = 2;           // additive slack on lemma-derived bounds
constexpr std::int64_t kIndexSlack = 3;  // |i-j| <= d(u_i,u_j) + 3
constexpr double kMedianSeconds = 60.0;  // runtime bound for median exactness

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    pass = false;
    detail << why << "; ";
  }
  void note(const std::string& what) {
    if (pass) detail << what << "; ";
  }
};

struct SuiteEntry {
  std::string space;
  std::vector<std::string> ops;
};

/// Spaces with at most 60 vertices and the operators run on each.
const std::vector<SuiteEntry>& suite() {
  static const std::vector<SuiteEntry> s{
      {"path:12", {"tree-median", "triangle-center"}},
      {"star:8", {"tree-median", "triangle-center"}},
      {"trivalent:3", {"tree-median", "triangle-center"}},
      {"random:40:5", {"tree-median", "triangle-center"}},
      {"regular:4:2", {"tree-median", "triangle-center"}},
      {"grid:4:5", {"median-graph", "triangle-center"}},
      {"cube:4", {"median-graph", "triangle-center"}},
      {"tripod:3", {"median-graph", "triangle-center"}},
      {"trivalent:2*path:4", {"product-median", "product-triangle-center"}},
      {"star:3*path:5", {"product-median", "product-triangle-center"}},
      {"cycle:9", {"triangle-center"}},
      {"relhyp:2:3", {"triangle-center"}},
  };
  return s;
}

bool is_exact(const std::string& op) { return op == "tree-median" || op == "median-graph" || op == "product-median"; }

/// Reports produced along the way, re-verified and re-run by criterion 10.
struct Produced {
  ExperimentConfig config;
  std::string rendered;
};
std::vector<Produced> g_reports;

Json produce(ExperimentConfig config) {
  config.timestamp = false;
  const auto report = run_report(config);
  g_reports.push_back({config, render_json(report.json)});
  return report.json;
}

ExperimentConfig cfg(const std::string& command, const std::string& space, std::vector<std::string> ops) {
  ExperimentConfig c;
  c.command = command;
  c.space = space;
  c.operators = std::move(ops);
  return c;
}

Ratio ratio(const Json& j) { return Ratio::parse(j.get<std::string>()); }

// ---- 1 ---------------------------------------------------------------------

void median_exactness(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> trees{"random:20:1", "random:35:2", "random:50:3", "random:60:4", "random:60:5",
                                       "random:45:6", "path:60",     "star:30",     "trivalent:4", "regular:4:2"};
  const std::vector<std::string> median_graphs{"grid:5:6", "cube:5", "tripod:3", "path:3*path:4*path:5",
                                               "star:3*path:6"};
  std::size_t triples = 0;
  auto run = [&](const std::string& spec, const std::string& op_spec) {
    const auto bundle = make_space(spec);
    if (bundle.space->size() > 60) return out.fail(spec + " has more than 60 vertices");
    const auto op = make_operator(op_spec, bundle);
    const auto ax = check_median_axioms(op);
    if (!ax.ok) return out.fail(spec + ": " + ax.axiom + " fails");
    const auto d = oracle::floyd_of(*bundle.space);
    const auto n = static_cast<Vertex>(bundle.space->size());
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        for (Vertex z = 0; z < n; ++z) {
          ++triples;
          if (oracle::brute_median(d, x, y, z) != static_cast<long>(op(x, y, z)))
            return out.fail(spec + ": differs from the interval oracle at (" + std::to_string(x) + "," +
                            std::to_string(y) + "," + std::to_string(z) + ")");
        }
    const auto report = produce(cfg("certify", spec, {op_spec}));
    if (!report.at("median_axioms").at("ok").get<bool>()) out.fail(spec + ": report disagrees on the axioms");
  };
  for (const auto& t : trees) run(t, "tree-median");
  for (const auto& m : median_graphs) run(m, "median-graph");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kMedianSeconds) out.fail("took " + std::to_string(secs) + " s");
  out.note("10 trees + 5 median graphs, " + std::to_string(triples) + " triples against the oracle");
}

// ---- 2 ---------------------------------------------------------------------

void certificates(Outcome& out) {
  std::size_t count = 0;
  for (const auto& e : suite())
    for (const auto& op : e.ops) {
      if (op != "tree-median" && op != "product-median") continue;
      const auto r = produce(cfg("certify", e.space, {op}));
      const auto& a = r.at("axiom_constants");
      ++count;
      if (!a.at("m0").get<bool>()) out.fail(e.space + " " + op + ": M0 fails");
      if (a.at("cm1").get<Distance>() != 0) out.fail(e.space + " " + op + ": cm1 = " + a.at("cm1").dump());
      if (ratio(a.at("cm2")) > Ratio{1}) out.fail(e.space + " " + op + ": cm2 = " + a.at("cm2").get<std::string>());
    }
  out.note(std::to_string(count) + " exhaustive certificates with cm1 = 0, cm2 <= 1");
}

// ---- 3 ---------------------------------------------------------------------

void lemma_suite(Outcome& out) {
  std::size_t pairs = 0;
  auto check_parts = [&](const std::string& label, const Json& lemma) {
    for (const auto& [part, p] : lemma.items())
      if (p.at("status") == "skipped") out.fail(label + ": part " + part + " has no K");
  };
  for (const auto& e : suite())
    for (const auto& op : e.ops) {
      const auto r = produce(cfg("lemma22", e.space, {op}));
      const auto& lemma = r.at("lemma22");
      const auto label = e.space + " " + op;
      ++pairs;
      check_parts(label, lemma);
      if (!is_exact(op)) continue;
      for (const char* part : {"1", "2"})
        if (ratio(lemma.at(part).at("K")) != Ratio{0})
          out.fail(label + ": part " + part + " K = " + lemma.at(part).at("K").get<std::string>());
      for (const auto& level : lemma.at("3").at("levels"))
        if (level.at("level") == 0 && level.at("value") != 0)
          out.fail(label + ": part 3 at R = 0 has diameter " + level.at("value").dump());
    }
  const auto s8 = produce(cfg("lemma22", "band:8", {"sheared"}));
  const auto s16 = produce(cfg("lemma22", "band:16", {"sheared"}));
  check_parts("band:8 sheared", s8.at("lemma22"));
  check_parts("band:16 sheared", s16.at("lemma22"));
  std::string ks;
  for (const auto& [part, p] : s16.at("lemma22").items()) {
    const auto k8 = ratio(s8.at("lemma22").at(part).at("K"));
    const auto k16 = ratio(p.at("K"));
    ks += part + ":" + k8.str() + "->" + k16.str() + " ";
    if (k16 > k8 * Ratio{2}) out.fail("sheared part " + part + ": K(16) = " + k16.str() + " > 2 K(8) = " + (k8 * Ratio{2}).str());
  }
  out.note(std::to_string(pairs) + " suite pairs; sheared K(8)->K(16) " + ks);
}

// ---- 4 ---------------------------------------------------------------------

void interval_quasigeodesics(Outcome& out) {
  std::size_t chains = 0, through = 0;
  Distance worst_pass = 0;
  for (const auto& e : suite()) {
    const auto bundle = make_space(e.space);
    const auto& g = *bundle.space;
    const auto n = static_cast<Vertex>(g.size());
    for (const auto& op_spec : e.ops) {
      const auto op = make_operator(op_spec, bundle);
      const auto r = produce(cfg("quasigeo", e.space, {op_spec}));
      const auto cert = certify(op);
      const auto label = e.space + " " + op_spec;
      if (ratio(r.at("axiom_constants").at("C")) != cert.C) out.fail(label + ": report C differs");
      const auto bound = cert.step_bound();
      for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y) {
          if (x == y) continue;
          std::vector<char> in_interval(n, 0);
          for (Vertex z = 0; z < n; ++z) in_interval[op(x, y, z)] = 1;
          const auto c = extract_quasigeodesic(op, cert, x, y);
          ++chains;
          const auto& pts = c.points;
          if (pts.front() != x || pts.back() != y) return out.fail(label + ": chain has wrong endpoints");
          for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!in_interval[pts[i]]) return out.fail(label + ": chain leaves the interval");
            if (i > 0 && g.dist(pts[i - 1], pts[i]) > bound) return out.fail(label + ": step exceeds 2C");
            for (std::size_t j = i + 1; j < pts.size(); ++j)
              if (static_cast<std::int64_t>(j - i) > g.dist(pts[i], pts[j]) + kIndexSlack)
                return out.fail(label + ": |i-j| exceeds d + 3");
          }
          for (Vertex p = 0; p < n; ++p) {
            if (!in_interval[p]) continue;
            const auto t = through_point_quasigeodesic(op, cert, x, y, p);
            ++through;
            Distance pass = kUnreachable;
            for (auto u : t.chain.points) pass = pass < 0 ? g.dist(u, p) : std::min(pass, g.dist(u, p));
            worst_pass = std::max(worst_pass, pass);
            if (Ratio{pass} > cert.C + Ratio{kSlack})
              return out.fail(label + ": through-point chain misses p by " + std::to_string(pass) + " > C + 2 = " +
                              (cert.C + Ratio{kSlack}).str());
          }
        }
    }
  }
  out.note(std::to_string(chains) + " chains, " + std::to_string(through) + " through-point chains, worst miss " +
           std::to_string(worst_pass));
}

// ---- 5 ---------------------------------------------------------------------

void hyperbolic_uniqueness(Outcome& out) {
  const std::vector<Distance> radii{4, 8, 16};
  const std::vector<std::pair<std::string, std::string>> cases{{"trivalent:5", "tree-median"},
                                                               {"tripod:8", "median-graph"}};
  for (const auto& [space, exact] : cases) {
    auto c = cfg("experiment", space, {exact, "triangle-center"});
    c.experiment = "uniqueness";
    c.radii = radii;
    const auto r = produce(c);
    std::vector<Distance> values;
    for (const auto& p : r.at("uniqueness").at("curve")) values.push_back(p.at("sup_distance").get<Distance>());
    std::string curve;
    for (auto v : values) curve += std::to_string(v) + " ";
    out.note(space + " curve " + curve);
    if (values.size() != 3) {
      out.fail(space + ": expected three curve points");
      continue;
    }
    if (values[2] > values[0] + kSlack) out.fail(space + ": value at r=16 exceeds value at r=4 + 2");
    if (make_space(space).space->is_tree())
      for (auto v : values)
        if (v != 0) out.fail(space + ": tree curve is not identically 0");
  }
}

// ---- 6 ---------------------------------------------------------------------

void product_closeness(Outcome& out) {
  const std::string space = "trivalent:3*trivalent:3";
  const auto r = produce(cfg("closeness", space, {"product-median", "product-triangle-center"}));
  const auto sup = r.at("closeness").at("sup").get<Distance>();
  if (r.at("closeness").at("scope") != "exhaustive") out.fail("closeness was not exhaustive");
  if (sup > kSlack) out.fail("closeness " + std::to_string(sup) + " > 2");

  const auto bundle = make_space(space);
  const auto& prod = *bundle.product;
  const IntervalTable table(make_operator("product-median", bundle));
  std::vector<std::pair<Vertex, Vertex>> ends;
  std::vector<std::vector<Vertex>> segments;
  const auto& f = *prod.factors[0];
  for (Vertex a = 0; a < f.size(); ++a)
    for (Vertex b = a; b < f.size(); ++b) {
      ends.emplace_back(a, b);
      segments.push_back(geodesic_between(f, a, b).vertices);
    }
  Distance worst = -1;
  std::string worst_spec;
  std::size_t count = 0;
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = 0; j < segments.size(); ++j) {
      VertexSet subset(prod.space->size());
      for (auto u : segments[i])
        for (auto v : segments[j]) subset.insert(prod.encode({u, v}));
      const auto q = quasiconvexity(table, subset);
      ++count;
      if (q.constant > worst) {
        worst = q.constant;
        worst_spec = "segments:" + std::to_string(ends[i].first) + ":" + std::to_string(ends[i].second) + "," +
                     std::to_string(ends[j].first) + ":" + std::to_string(ends[j].second);
      }
    }
  if (worst > kSlack) out.fail("segment product " + worst_spec + " has quasiconvexity " + std::to_string(worst));
  auto qc = cfg("quasiconvexity", space, {"product-median"});
  qc.subset = worst_spec;
  const auto qr = produce(qc);
  if (qr.at("quasiconvexity").at("constant").get<Distance>() != worst) out.fail("report disagrees on " + worst_spec);
  out.note("closeness " + std::to_string(sup) + "; " + std::to_string(count) +
           " segment products, worst quasiconvexity " + std::to_string(worst));
}

// ---- 7 ---------------------------------------------------------------------

void shear_witness(Outcome& out) {
  auto c = cfg("experiment", "", {});
  c.experiment = "shear";
  c.sizes = {8, 16, 32};
  const auto r = produce(c);
  std::optional<Ratio> c8, c16;
  for (const auto& row : r.at("shear")) {
    const auto n = row.at("n").get<Distance>();
    const auto sup = row.at("closeness").at("sup").get<Distance>();
    out.note("n=" + std::to_string(n) + " closeness " + std::to_string(sup));
    if (2 * sup < n) out.fail("n=" + std::to_string(n) + ": closeness " + std::to_string(sup) + " < n/2");
    if (!row.at("sheared_certificate").is_null()) {
      const auto C = ratio(row.at("sheared_certificate").at("C"));
      if (n == 8) c8 = C;
      if (n == 16) c16 = C;
    }
  }
  if (!c8 || !c16) return out.fail("sheared certificates missing at n = 8, 16");
  out.note("C(8) = " + c8->str() + ", C(16) = " + c16->str());
  if (*c16 > *c8 * Ratio{2} || *c8 > *c16 * Ratio{2}) out.fail("sheared C not stable within a factor 2");
}

// ---- 8 ---------------------------------------------------------------------

void barycentre_trichotomy(Outcome& out) {
  auto c = cfg("experiment", "", {});
  c.experiment = "barycentre";
  c.sizes = {4, 8, 16};
  const auto r = produce(c);
  std::map<std::size_t, Distance> minimal;
  for (const auto& row : r.at("barycentre")) {
    const auto k = row.at("flat_size").get<std::size_t>();
    minimal[k] = row.at("minimal_delta").get<Distance>();
    out.note("k=" + std::to_string(k) + " delta " + row.at("delta").dump() + " minimal " + row.at("minimal_delta").dump());
    if (!row.at("all_classified").get<bool>()) out.fail("k=" + std::to_string(k) + ": some triple does not classify");
    const auto& ends = row.at("ray_ends").at("result");
    if (ends.is_null() || ends.at("kind") != "peripheral")
      out.fail("k=" + std::to_string(k) + ": ray-end triple is not peripheral");
  }
  if (!minimal.count(4) || !minimal.count(16)) return out.fail("missing flat sizes");
  if (minimal[16] > minimal[4] + kSlack) out.fail("minimal delta grows with the flat");
}

// ---- 9 ---------------------------------------------------------------------

void morse_quasiconvex(Outcome& out) {
  std::size_t count = 0;
  auto run = [&](const std::string& space, const std::string& op, const std::string& subset) {
    auto c = cfg("experiment", space, {op});
    c.experiment = "morse";
    c.subset = subset;
    c.corpus = 200;
    c.slack = kSlack;
    const auto r = produce(c);
    ++count;
    const auto qc = r.at("quasiconvexity").at("constant").get<Distance>();
    const auto gauge = r.at("morse_check").at("gauge_value").get<Distance>();
    if (r.at("morse").at("corpus").get<std::size_t>() != 200) out.fail(space + " " + subset + ": corpus is not 200");
    if (qc > gauge + kSlack)
      out.fail(space + " " + op + " " + subset + ": quasiconvexity " + std::to_string(qc) + " > N + 2 = " +
               std::to_string(gauge + kSlack));
  };
  for (const char* flat : {"relhyp:4:8", "relhyp:8:16"}) run(flat, "triangle-center", "peripheral:0");
  for (const auto& e : suite()) {
    const auto& g = *make_space(e.space).space;
    // A diametral pair and a geodesic from vertex 0 to the middle vertex.
    Vertex a = 0, b = 0;
    for (Vertex x = 0; x < g.size(); ++x)
      for (Vertex y = x + 1; y < g.size(); ++y)
        if (g.dist(x, y) > g.dist(a, b)) a = x, b = y;
    const auto mid = static_cast<Vertex>(g.size() / 2);
    for (const auto& op : e.ops) {
      run(e.space, op, "geodesic:" + std::to_string(a) + ":" + std::to_string(b));
      if (mid != 0) run(e.space, op, "geodesic:0:" + std::to_string(mid));
    }
  }
  out.note(std::to_string(count) + " subsets with a 200-path corpus each");
}

// ---- 10 --------------------------------------------------------------------

void reproducibility(Outcome& out) {
  std::size_t witnesses = 0;
  for (const auto& p : g_reports) {
    const auto label = p.config.command + (p.config.experiment.empty() ? "" : " " + p.config.experiment) + " " +
                       p.config.space;
    const auto v = verify_report(Json::parse(p.rendered));
    witnesses += v.checked;
    if (!v.ok()) out.fail(label + ": " + v.failures.front());
    if (render_json(run_report(p.config).json) != p.rendered) out.fail(label + ": rerun is not byte-identical");
  }
  out.note(std::to_string(g_reports.size()) + " reports, " + std::to_string(witnesses) +
           " witnesses verified, reruns byte-identical");
}

}  // namespace

int main() {
  unsetenv("MEDIANLAB_CACHE");
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"median exactness", median_exactness},
      {"certificates of exact medians", certificates},
      {"interval lemma suite", lemma_suite},
      {"quasigeodesics in intervals", interval_quasigeodesics},
      {"hyperbolic uniqueness curves", hyperbolic_uniqueness},
      {"product closeness and segment quasiconvexity", product_closeness},
      {"shear non-uniqueness", shear_witness},
      {"barycentre trichotomy", barycentre_trichotomy},
      {"Morse subsets are quasiconvex", morse_quasiconvex},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s %2zu %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
