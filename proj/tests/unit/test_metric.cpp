#include <doctest.h>

#include "medianlab/metric/graph_io.hpp"
#include "medianlab/metric/graph_space.hpp"
#include "medianlab/metric/product.hpp"
#include "oracles.hpp"

using namespace medianlab;

namespace {

SpacePtr from_pairs(std::size_t n, const std::vector<std::pair<unsigned, unsigned>>& pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v});
  return build_space(n, edges);
}

SpacePtr path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return build_space(n, edges, "path");
}

}  // namespace

TEST_CASE("path distances") {
  auto p5 = path(5);
  CHECK(p5->dist(0, 4) == 4);
  CHECK(p5->diameter() == 4);
  CHECK(p5->is_tree());
}

TEST_CASE("single vertex space") {
  auto one = build_space(1, {});
  CHECK(one->size() == 1);
  CHECK(one->dist(0, 0) == 0);
  CHECK(estimate_hyperbolicity(*one).delta.twice == 0);
}

TEST_CASE("grid distances agree with Floyd-Warshall") {
  for (auto [r, c] : {std::pair{3u, 3u}, {4u, 7u}, {6u, 5u}}) {
    const auto edges = oracle::grid_edges(r, c);
    auto g = from_pairs(r * c, edges);
    const auto d = oracle::floyd(r * c, edges);
    for (Vertex a = 0; a < r * c; ++a)
      for (Vertex b = 0; b < r * c; ++b) REQUIRE(g->dist(a, b) == d[a][b]);
  }
  auto g = from_pairs(9, oracle::grid_edges(3, 3));
  CHECK(g->dist(0, 8) == 4);
}

TEST_CASE("weighted edges use Dijkstra") {
  auto g = build_space(3, {{0, 1, 5}, {1, 2, 1}, {0, 2, 2}});
  CHECK_FALSE(g->unit_weights());
  CHECK(g->dist(0, 1) == 3);
  const auto path = geodesic_between(*g, 0, 1);
  CHECK(path.vertices == std::vector<Vertex>{0, 2, 1});
}

TEST_CASE("build errors") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kVerificationFailed;
  };
  CHECK(code_of([] { build_space(4, {{0, 1}, {2, 3}}); }) == ErrorCode::kDisconnectedGraph);
  CHECK(code_of([] { build_space(2, {{0, 2}}); }) == ErrorCode::kInvalidEdge);
  CHECK(code_of([] { build_space(2, {{0, 1, 0}}); }) == ErrorCode::kInvalidEdge);
  CHECK(code_of([] { build_space(2, {{1, 1}, {0, 1}}); }) == ErrorCode::kInvalidEdge);
  CHECK(code_of([] { build_space(10, {}, "", BuildOptions{5}); }) == ErrorCode::kSizeCapExceeded);
}

TEST_CASE("metric axioms hold on sample spaces") {
  for (auto g : {path(7), from_pairs(8, oracle::cycle_edges(8)), from_pairs(20, oracle::grid_edges(4, 5))}) {
    CHECK(find_metric_violation(*g).empty());
  }
}

TEST_CASE("Gromov products") {
  auto p5 = path(5);
  CHECK(gromov_product(*p5, 0, 4, 2).twice == 0);
  for (Vertex x = 0; x < 5; ++x)
    for (Vertex z = 0; z < 5; ++z) CHECK(gromov_product(*p5, x, x, z).twice == 2 * p5->dist(x, z));
  auto star = build_space(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(gromov_product(*star, 1, 2, 0).twice == 0);

  auto g = from_pairs(20, oracle::grid_edges(4, 5));
  for (Vertex x = 0; x < 20; ++x)
    for (Vertex y = 0; y < 20; ++y)
      for (Vertex z = 0; z < 20; ++z) {
        const auto gp = gromov_product(*g, x, y, z);
        REQUIRE(gp.twice >= 0);
        REQUIRE(gp.twice <= 2 * std::min(g->dist(x, z), g->dist(y, z)));
      }
}

TEST_CASE("four-point delta") {
  SUBCASE("trees are 0-hyperbolic") {
    auto t = build_space(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    CHECK(estimate_hyperbolicity(*t).delta.twice == 0);
  }
  SUBCASE("cycle matches the brute-force scan") {
    const auto edges = oracle::cycle_edges(8);
    auto c8 = from_pairs(8, edges);
    const auto est = estimate_hyperbolicity(*c8);
    CHECK(est.delta.twice == oracle::four_point_twice(oracle::floyd(8, edges)));
    const auto& w = est.witness;
    CHECK(four_point_delta(*c8, w[0], w[1], w[2], w[3]) == est.delta);
  }
  SUBCASE("larger grids are less hyperbolic") {
    const auto e5 = oracle::grid_edges(5, 5);
    const auto e9 = oracle::grid_edges(9, 9);
    const auto d5 = estimate_hyperbolicity(*from_pairs(25, e5)).delta;
    const auto d9 = estimate_hyperbolicity(*from_pairs(81, e9)).delta;
    CHECK(d5.twice == oracle::four_point_twice(oracle::floyd(25, e5)));
    CHECK(d9.twice == oracle::four_point_twice(oracle::floyd(81, e9)));
    CHECK(d5 < d9);
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(estimate_hyperbolicity(*path(10), HyperbolicityOptions{5}), Error);
  }
}

TEST_CASE("metric intervals") {
  auto p5 = path(5);
  CHECK(metric_interval(*p5, 0, 4) == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(metric_interval(*p5, 3, 3) == std::vector<Vertex>{3});
  auto c4 = from_pairs(4, oracle::cycle_edges(4));
  CHECK(metric_interval(*c4, 0, 2) == std::vector<Vertex>{0, 1, 2, 3});

  auto g = from_pairs(30, oracle::grid_edges(5, 6));
  for (Vertex x = 0; x < 30; ++x)
    for (Vertex y = 0; y < 30; ++y) {
      const auto iv = metric_interval_set(*g, x, y);
      const auto dxy = g->dist(x, y);
      REQUIRE(iv.contains(x));
      REQUIRE(iv.contains(y));
      REQUIRE(iv.is_subset_of(ball(*g, x, dxy) & ball(*g, y, dxy)));
    }
}

TEST_CASE("canonical geodesics") {
  auto g = from_pairs(30, oracle::grid_edges(5, 6));
  for (Vertex x = 0; x < 30; ++x)
    for (Vertex y = 0; y < 30; ++y) {
      const auto p = geodesic_between(*g, x, y);
      REQUIRE(p.vertices.front() == x);
      REQUIRE(p.vertices.back() == y);
      REQUIRE(p.vertices.size() == static_cast<std::size_t>(g->dist(x, y)) + 1);
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
        REQUIRE(g->dist(p.vertices[i], p.vertices[i + 1]) == 1);
      REQUIRE(geodesic_between(*g, x, y).vertices == p.vertices);
      auto back = geodesic_between(*g, y, x).vertices;
      std::reverse(back.begin(), back.end());
      REQUIRE(back == p.vertices);
    }
  auto c4 = from_pairs(4, oracle::cycle_edges(4));
  CHECK(geodesic_between(*c4, 0, 2).vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(geodesic_between(*c4, 2, 0).vertices == std::vector<Vertex>{2, 1, 0});
}

TEST_CASE("products use the l1 metric") {
  auto p4 = path(4);
  auto prod = cartesian_product({p4, p4, p4});
  CHECK(prod.space->size() == 64);
  for (Vertex a = 0; a < 64; ++a)
    for (Vertex b = 0; b < 64; ++b) {
      const auto ca = prod.decode(a);
      const auto cb = prod.decode(b);
      Distance sum = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        sum += p4->dist(ca[i], cb[i]);
        REQUIRE(prod.project(a, i) == ca[i]);
      }
      REQUIRE(prod.space->dist(a, b) == sum);
      REQUIRE(prod.encode(ca) == a);
    }
  auto single = cartesian_product({p4});
  CHECK(single.space->matrix() == p4->matrix());
  CHECK_THROWS_AS(cartesian_product({p4, p4, p4}, 50), Error);
}

TEST_CASE("graph file round trip") {
  const std::string text =
      "# provenance: test\n"
      "5 5\n"
      "0 1\n"
      "1 2 3\n"
      "2 3\n"
      "3 4\n"
      "4 0\n"
      "P 2 1 3\n";
  const auto doc = parse_graph(text);
  CHECK(doc.n == 5);
  CHECK(doc.edges.size() == 5);
  CHECK(doc.edges[1].weight == 3);
  REQUIRE(doc.peripherals.size() == 1);
  CHECK(doc.peripherals[0] == std::vector<Vertex>{1, 3});
  CHECK(serialize_graph(doc) == text);
  CHECK(serialize_graph(parse_graph(serialize_graph(doc))) == text);
  auto g = build_space(doc);
  CHECK(g->dist(1, 2) == 3);

  const auto loose = parse_graph("  # a\n\n2   1\r\n0\t1\n");
  CHECK(serialize_graph(loose) == "# a\n2 1\n0 1\n");

  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_graph("3 1\n0 x\n"), Error);
  CHECK_THROWS_AS(parse_graph(""), Error);
  CHECK_THROWS_AS(parse_graph("2 1\n0 1\nP 2 0 5\n"), Error);
}
