#include <doctest.h>

#include "medianlab/coarse/certificate.hpp"
#include "medianlab/constructions/catalog.hpp"
#include "medianlab/constructions/generators.hpp"
#include "medianlab/constructions/relhyp.hpp"
#include "medianlab/hyperbolic/barycentre.hpp"
#include "medianlab/hyperbolic/morse.hpp"
#include "medianlab/hyperbolic/triangle_center.hpp"
#include "medianlab/hyperbolic/uniqueness.hpp"
#include "oracles.hpp"

using namespace medianlab;

namespace {

void check_against_brute_center(const TernaryOperator& op) {
  const auto d = oracle::floyd_of(op.space());
  const auto adj = oracle::adjacency_of(op.space());
  const auto n = static_cast<Vertex>(op.size());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) REQUIRE(op(x, y, z) == oracle::brute_center(d, adj, x, y, z));
}

VertexSet all_of(const GraphSpace& g) {
  VertexSet s(g.size());
  for (Vertex v = 0; v < g.size(); ++v) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("triangle centers agree with a direct search") {
  check_against_brute_center(triangle_center_median(cycle_graph(8)));
  check_against_brute_center(triangle_center_median(grid_graph(3, 4)));
  check_against_brute_center(triangle_center_median(random_tree(15, 4)));
  // Lazy path, above the table cap.
  check_against_brute_center(triangle_center_median(cycle_graph(9), OperatorOptions{4, 64, true}));
}

TEST_CASE("triangle centers on trees are tree medians") {
  std::vector<SpacePtr> trees{path_graph(12), star_graph(6), regular_tree(3, 3), trivalent_tree(3)};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) trees.push_back(random_tree(40, seed));
  for (const auto& t : trees) {
    const auto tc = triangle_center_median(t);
    const auto tm = tree_median(t);
    const auto n = static_cast<Vertex>(t->size());
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        for (Vertex z = 0; z < n; ++z) REQUIRE(tc(x, y, z) == tm(x, y, z));
  }
}

TEST_CASE("triangle center operators satisfy (M0) and report radii") {
  for (const auto& g : {cycle_graph(8), grid_graph(4, 4), tripod_thickened(2)}) {
    const auto op = triangle_center_median(g);
    const auto table = op.materialize(kSweepTableCap);
    CHECK_FALSE(find_m0_violation(table).has_value());
    const SideDistances sides(g);
    const auto n = static_cast<Vertex>(g->size());
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        for (Vertex z = y + 1; z < n; ++z) {
          const auto c = triangle_center(sides, x, y, z);
          CHECK(c.center == op(x, y, z));
          for (auto [a, b] : {std::pair{x, y}, {y, z}, {x, z}})
            CHECK(static_cast<Distance>(sides.row(a, b)[c.center]) <= c.radius);
        }
    CHECK(op(3, 3, 5) == 3);
    CHECK(op(5, 3, 3) == 3);
  }
}

TEST_CASE("triangle center certificate on C8 matches an exhaustive scan") {
  const auto op = triangle_center_median(cycle_graph(8));
  const auto cert = certify(op);
  const auto d = oracle::floyd_of(op.space());
  CHECK(cert.cm1_error == oracle::naive_cm1(d, [&](unsigned a, unsigned b, unsigned c) { return op(a, b, c); }));
  CHECK(cert.C >= Ratio{1});
}

TEST_CASE("Morse gauge") {
  SUBCASE("whole space") {
    const auto g = grid_graph(4, 5);
    const auto gauge = morse_gauge(*g, all_of(*g), MorseOptions{{Ratio{1}, Ratio{2}, Ratio{3}}, 50, 3, 2});
    REQUIRE(gauge.levels.size() == 3);
    for (const auto& l : gauge.levels) CHECK(l.N == 0);
  }
  SUBCASE("a geodesic in a tree") {
    const auto t = random_tree(40, 5);
    const auto geo = geodesic_between(*t, 0, 39).vertices;
    const auto A = VertexSet::of(t->size(), geo);
    const auto gauge = morse_gauge(*t, A);
    CHECK(gauge.levels[0].L == Ratio{1});
    CHECK(gauge.levels[0].N == 0);
    CHECK(gauge.levels[0].accepted > 0);
    for (const auto& p : gauge.corpus) CHECK(recheck_morse_path(*t, A, p));
    // Levels are nested.
    CHECK(gauge.levels[0].N <= gauge.levels[1].N);
    CHECK(gauge.levels[1].N <= gauge.levels[2].N);
    CHECK(gauge.N_at(Ratio{3}) == gauge.levels[2].N);
  }
  SUBCASE("deterministic under the seed") {
    const auto toy = gen_relhyp_toy(4, {8, 8, 8});
    const auto a = morse_gauge(*toy.space, toy.peripherals[0], MorseOptions{{Ratio{1}, Ratio{2}}, 80, 9, 2});
    const auto b = morse_gauge(*toy.space, toy.peripherals[0], MorseOptions{{Ratio{1}, Ratio{2}}, 80, 9, 2});
    REQUIRE(a.corpus.size() == b.corpus.size());
    for (std::size_t i = 0; i < a.corpus.size(); ++i) CHECK(a.corpus[i].points == b.corpus[i].points);
    CHECK(a.levels[1].N == b.levels[1].N);
  }
  SUBCASE("peripheral flat gauge is stable across flat sizes") {
    std::vector<Distance> n3;
    for (std::size_t k : {4, 8}) {
      const auto toy = gen_relhyp_toy(k, {2 * k, 2 * k, 2 * k});
      const auto gauge = morse_gauge(*toy.space, toy.peripherals[0]);
      for (const auto& p : gauge.corpus) CHECK(recheck_morse_path(*toy.space, toy.peripherals[0], p));
      n3.push_back(gauge.levels[2].N);
    }
    CHECK(n3[1] <= n3[0] + 2);
  }
  SUBCASE("errors") {
    const auto g = path_graph(5);
    CHECK_THROWS_AS(morse_gauge(*g, VertexSet(5)), Error);
    try {
      morse_gauge(*g, all_of(*g), MorseOptions{{Ratio{1}}, 0, 1, 2});
      FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyCorpus);
    }
  }
}

TEST_CASE("Morse gauge bounds quasiconvexity") {
  SUBCASE("tree geodesic") {
    const auto t = trivalent_tree(3);
    const auto op = tree_median(t);
    const auto cert = certify(op);
    const auto A = VertexSet::of(t->size(), geodesic_between(*t, 7, 21).vertices);
    const auto check = morse_implies_quasiconvex_check(op, cert, A, morse_gauge(*t, A));
    CHECK(check.quasiconvexity.constant == 0);
    CHECK(check.holds);
  }
  SUBCASE("whole space") {
    const auto g = grid_graph(4, 4);
    const auto op = median_graph_median(g);
    const auto check = morse_implies_quasiconvex_check(op, certify(op), all_of(*g), morse_gauge(*g, all_of(*g)));
    CHECK(check.quasiconvexity.constant == 0);
    CHECK(check.gauge_value == 0);
    CHECK(check.holds);
  }
  SUBCASE("peripheral flat of the toy") {
    const auto toy = gen_relhyp_toy(4, {8, 8, 8});
    const auto op = median_graph_median(toy.space);
    const auto& A = toy.peripherals[0];
    const auto check = morse_implies_quasiconvex_check(op, certify(op), A, morse_gauge(*toy.space, A));
    CHECK(check.holds);
    CHECK(check.quasiconvexity.constant <= check.gauge_value + 2);
  }
}

TEST_CASE("uniqueness curves") {
  SUBCASE("tree median against triangle centers") {
    const auto t = trivalent_tree(4);
    const auto curve = uniqueness_experiment({tree_median(t), triangle_center_median(t)}, {2, 4, 8});
    CHECK(curve.values(0, 1) == std::vector<Distance>{0, 0, 0});
  }
  SUBCASE("an operator against itself") {
    const auto g = grid_graph(5, 5);
    const auto op = median_graph_median(g);
    const auto curve = uniqueness_experiment({op, op}, {1, 2, 4});
    CHECK(curve.values(0, 1) == std::vector<Distance>{0, 0, 0});
  }
  SUBCASE("standard against sheared grows with the radius") {
    const auto band = make_space("band:16");
    const auto curve = uniqueness_experiment({make_operator("standard", band), make_operator("sheared", band)},
                                             {4, 8, 16});
    const auto v = curve.values(0, 1);
    REQUIRE(v.size() == 3);
    CHECK(v[0] < v[1]);
    CHECK(v[1] < v[2]);
    // Each witness really attains its value.
    for (const auto& p : curve.points) {
      const auto& [x, y, z] = p.witness;
      const auto st = make_operator("standard", band), sh = make_operator("sheared", band);
      CHECK(band.space->dist(st(x, y, z), sh(x, y, z)) == p.sup_distance);
    }
  }
  SUBCASE("parameter errors") {
    const auto t = path_graph(4);
    const auto op = tree_median(t);
    CHECK_THROWS_AS(uniqueness_experiment({op}, {1}), Error);
    CHECK_THROWS_AS(uniqueness_experiment({op, op}, {2, 2}), Error);
  }
  SUBCASE("centers sit near interval chains") {
    const auto t = trivalent_tree(3);
    const auto op = tree_median(t);
    const auto cert = certify(op);
    const auto prox = center_chain_proximity(triangle_center_median(t), op, cert, 0, 3);
    // Chains may step over the center.
    CHECK(prox.value <= cert.step_bound() / 2);
  }
}

TEST_CASE("barycentres") {
  SUBCASE("trees without peripherals give the tree median at delta 0") {
    const auto t = random_tree(25, 8);
    const auto m = tree_median(t);
    for (Vertex x = 0; x < 25; ++x)
      for (Vertex y = 0; y < 25; ++y)
        for (Vertex z = 0; z < 25; ++z) {
          const auto r = barycentre(*t, {}, x, y, z, 0);
          REQUIRE(r.kind == BarycentreKind::kPoint);
          REQUIRE(r.b == m(x, y, z));
        }
  }
  SUBCASE("degenerate triples") {
    const auto g = grid_graph(4, 4);
    const auto r = barycentre(*g, {}, 9, 9, 2, 3);
    CHECK(r.kind == BarycentreKind::kPoint);
    CHECK(r.b == 9);
  }
  SUBCASE("hyperbolic spaces without peripherals: Point once delta >= the four-point delta") {
    for (const auto& g : {cycle_graph(6), cycle_graph(9), grid_graph(3, 3), tripod_thickened(2), trivalent_tree(3)}) {
      const auto delta = estimate_hyperbolicity(*g).delta;
      const auto D = static_cast<Distance>((delta.twice + 1) / 2);
      BarycentreClassifier cl(g, {});
      cl.set_delta(D);
      const auto sweep = cl.sweep();
      CHECK(sweep.all_classified);
      CHECK(sweep.peripheral == 0);
    }
  }
  SUBCASE("ray endpoints of the toy meet the flat") {
    const auto toy = gen_relhyp_toy(4, {8, 8, 8});
    const auto& g = *toy.space;
    const auto [x, y, z] = toy.ray_ends;
    const auto delta = default_barycentre_delta(g, toy.peripherals);
    const auto r = barycentre(g, toy.peripherals, x, y, z, delta);
    REQUIRE(r.kind == BarycentreKind::kPeripheral);
    CHECK(r.peripheral == 0);
    // a is nearest the corner of x's ray, and so on.
    const std::array<Vertex, 3> abc{r.a, r.b, r.c};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(g.dist(abc[i], toy.attachments[i]) < g.dist(abc[i], toy.attachments[j]));
    CHECK(recheck_barycentre(g, toy.peripherals, x, y, z, r));

    // Direct search over the flat for the incidence pattern.
    const auto d = oracle::floyd_of(g);
    const auto adj = oracle::adjacency_of(g);
    const auto alpha = oracle::canonical_side(d, adj, y, z);
    const auto beta = oracle::canonical_side(d, adj, x, z);
    const auto gamma = oracle::canonical_side(d, adj, x, y);
    bool found = false;
    toy.peripherals[0].for_each([&](Vertex a) {
      if (oracle::distance_to(d, a, beta) <= delta && oracle::distance_to(d, a, gamma) <= delta) found = true;
    });
    CHECK(found);
  }
  SUBCASE("the classifier agrees with single-triple classification") {
    const auto toy = gen_relhyp_toy(3, {3, 4, 5});
    BarycentreClassifier cl(toy.space, toy.peripherals);
    for (Distance delta : {0, 1, 2}) {
      cl.set_delta(delta);
      const auto n = static_cast<Vertex>(toy.space->size());
      for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y)
          for (Vertex z = 0; z < n; ++z) {
            const auto got = cl.classify(x, y, z);
            try {
              const auto want = barycentre(*toy.space, toy.peripherals, x, y, z, delta);
              REQUIRE(got.has_value());
              CHECK(got->kind == want.kind);
              CHECK(got->b == want.b);
              CHECK(got->a == want.a);
              CHECK(got->c == want.c);
              CHECK(recheck_barycentre(*toy.space, toy.peripherals, x, y, z, want));
            } catch (const Error& e) {
              CHECK(e.code() == ErrorCode::kNoBarycentre);
              CHECK_FALSE(got.has_value());
            }
          }
    }
  }
  SUBCASE("NoBarycentre carries the minimal delta") {
    const auto g = cycle_graph(12);
    const Vertex x = 0, y = 4, z = 8;
    const auto need = minimal_barycentre_delta(*g, {}, x, y, z);
    REQUIRE(need > 0);
    try {
      barycentre(*g, {}, x, y, z, need - 1);
      FAIL("expected NoBarycentre");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoBarycentre);
      CHECK(std::string(e.what()).find("minimal delta is " + std::to_string(need)) != std::string::npos);
    }
    CHECK(recheck_barycentre(*g, {}, x, y, z, barycentre(*g, {}, x, y, z, need)));
  }
  SUBCASE("tampered results fail the re-check") {
    const auto toy = gen_relhyp_toy(4, {8, 8, 8});
    const auto [x, y, z] = toy.ray_ends;
    auto r = barycentre(*toy.space, toy.peripherals, x, y, z, 1);
    r.a = toy.ray_ends[0];
    CHECK_FALSE(recheck_barycentre(*toy.space, toy.peripherals, x, y, z, r));
  }
}
