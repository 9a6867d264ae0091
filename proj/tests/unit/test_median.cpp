#include <doctest.h>

#include "medianlab/constructions/generators.hpp"
#include "medianlab/median/median.hpp"
#include "medianlab/median/table_io.hpp"
#include "oracles.hpp"

using namespace medianlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kVerificationFailed;
}

void require_matches_oracle(const TernaryOperator& op) {
  const auto d = oracle::floyd_of(op.space());
  const auto n = static_cast<Vertex>(op.size());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z) REQUIRE(static_cast<long>(op(x, y, z)) == oracle::brute_median(d, x, y, z));
}

}  // namespace

TEST_CASE("tree median") {
  auto p5 = path_graph(5);
  auto m = tree_median(p5);
  CHECK(m(0, 4, 2) == 2);
  CHECK(m(1, 1, 3) == 1);
  CHECK(m.kind() == OperatorKind::kExactMedian);
  auto star = star_graph(3);
  CHECK(tree_median(star)(1, 2, 3) == 0);

  for (std::uint64_t seed : {1, 2, 3}) require_matches_oracle(tree_median(random_tree(30, seed)));
  require_matches_oracle(tree_median(regular_tree(3, 3)));
  CHECK(code_of([] { tree_median(cycle_graph(5)); }) == ErrorCode::kNotATree);
}

TEST_CASE("lazy and dense evaluation agree") {
  auto t = random_tree(150, 11);
  auto dense = tree_median(t, OperatorOptions{200});
  auto lazy = tree_median(t, OperatorOptions{16, 1000});
  CHECK(dense.dense());
  CHECK_FALSE(lazy.dense());
  for (Vertex x = 0; x < 150; x += 3)
    for (Vertex y = 0; y < 150; y += 5)
      for (Vertex z = 0; z < 150; z += 7) {
        REQUIRE(dense(x, y, z) == lazy(x, y, z));
        REQUIRE(lazy(x, y, z) == lazy(z, x, y));
      }
}

TEST_CASE("median graph median") {
  auto g = grid_graph(3, 3);
  auto m = median_graph_median(g);
  CHECK(m(0, 8, 6) == 6);
  require_matches_oracle(m);

  auto q3 = hypercube_graph(3);
  auto mq = median_graph_median(q3);
  for (Vertex a = 0; a < 8; ++a)
    for (Vertex b = 0; b < 8; ++b)
      for (Vertex c = 0; c < 8; ++c) REQUIRE(mq(a, b, c) == oracle::majority(a, b, c));
  CHECK(mq(1, 2, 4) == 0);

  try {
    median_graph_median(cycle_graph(5));
    FAIL("C5 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotMedianGraph);
    REQUIRE(e.tuple().size() == 3);
    const auto d = oracle::floyd_of(*cycle_graph(5));
    CHECK(oracle::triple_intersection(d, e.tuple()[0], e.tuple()[1], e.tuple()[2]).size() != 1);
  }
  CHECK(code_of([] { median_graph_median(grid_graph(3, 3), MedianGraphOptions{{}, 4}); }) ==
        ErrorCode::kSizeCapExceeded);
}

TEST_CASE("product median") {
  auto p3 = path_graph(3);
  auto prod = gen_product({p3, p3});
  auto m = product_median(prod, {tree_median(p3), tree_median(p3)});
  CHECK(m(prod.encode({0, 0}), prod.encode({2, 2}), prod.encode({0, 2})) == prod.encode({0, 2}));

  auto p5 = path_graph(5);
  auto star = star_graph(3);
  auto mixed = gen_product({p5, star});
  auto mm = product_median(mixed, {tree_median(p5), tree_median(star)});
  const auto d5 = oracle::floyd_of(*p5);
  const auto ds = oracle::floyd_of(*star);
  for (Vertex x = 0; x < 20; ++x)
    for (Vertex y = 0; y < 20; ++y)
      for (Vertex z = 0; z < 20; ++z) {
        const auto v = mm(x, y, z);
        REQUIRE(static_cast<long>(mixed.project(v, 0)) ==
                oracle::brute_median(d5, mixed.project(x, 0), mixed.project(y, 0), mixed.project(z, 0)));
        REQUIRE(static_cast<long>(mixed.project(v, 1)) ==
                oracle::brute_median(ds, mixed.project(x, 1), mixed.project(y, 1), mixed.project(z, 1)));
      }
  CHECK(check_median_axioms(mm).ok);
  require_matches_oracle(mm);

  CHECK(code_of([&] { product_median(mixed, {tree_median(p5)}); }) == ErrorCode::kArityMismatch);
  CHECK(code_of([&] { product_median(mixed, {tree_median(star), tree_median(p5)}); }) == ErrorCode::kArityMismatch);
}

TEST_CASE("median axioms") {
  CHECK(check_median_axioms(tree_median(path_graph(5))).ok);
  CHECK(check_median_axioms(median_graph_median(hypercube_graph(3))).ok);
  for (std::uint64_t seed : {4, 5}) CHECK(check_median_axioms(tree_median(random_tree(40, seed))).ok);

  auto p3 = path_graph(3);
  auto broken_loc = TernaryOperator::from_rule(p3, OperatorKind::kCustomTable, "last",
                                               [](Vertex, Vertex, Vertex z) { return z; });
  auto r = check_median_axioms(broken_loc);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "M0-localisation");

  // Symmetric and localising, but not associative: the "minimum unless two agree" rule on P4.
  auto lopsided = TernaryOperator::from_rule(path_graph(4), OperatorKind::kCustomTable, "lopsided", [](Vertex x, Vertex y, Vertex z) {
    if (x == y || x == z) return x;
    if (y == z) return y;
    return std::min({x, y, z});
  });
  r = check_median_axioms(lopsided);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "M1");
  REQUIRE(r.tuple.size() == 4);
  const auto [x, p, y, z] = std::array{r.tuple[0], r.tuple[1], r.tuple[2], r.tuple[3]};
  CHECK(lopsided(lopsided(x, p, y), p, z) == r.lhs);
  CHECK(lopsided(x, p, lopsided(y, p, z)) == r.rhs);
  CHECK(r.lhs != r.rhs);

  CHECK(code_of([] { check_median_axioms(tree_median(path_graph(10), OperatorOptions{4}), 5); }) ==
        ErrorCode::kSizeCapExceeded);
}

TEST_CASE("algebra intervals equal metric intervals for exact medians") {
  auto p5 = path_graph(5);
  auto m = tree_median(p5);
  CHECK(algebra_interval(m, 0, 4).members.members() == std::vector<Vertex>{0, 1, 2, 3, 4});
  CHECK(algebra_interval(m, 2, 2).members.members() == std::vector<Vertex>{2});

  auto g = grid_graph(3, 3);
  CHECK(algebra_interval(median_graph_median(g), 0, 8).members.count() == 9);

  auto t = random_tree(25, 9);
  auto mt = tree_median(t);
  auto s = star_graph(3);
  auto prod = gen_product({t, s});
  auto mp = product_median(prod, {mt, tree_median(s)});
  for (const auto& op : {mt, mp}) {
    for (Vertex x = 0; x < op.size(); ++x)
      for (Vertex y = 0; y < op.size(); ++y) {
        const auto iv = algebra_interval(op, x, y);
        REQUIRE(iv.members == metric_interval_set(op.space(), x, y));
        REQUIRE(iv.projection[x] == x);
      }
  }
}

TEST_CASE("convexity") {
  auto t = random_tree(20, 3);
  auto m = tree_median(t);
  for (Vertex x = 0; x < 20; ++x)
    for (Vertex y = 0; y < 20; ++y) REQUIRE(is_convex(m, algebra_interval(m, x, y).members).convex);
  CHECK(is_convex(m, VertexSet::of(20, {7})).convex);

  auto g = grid_graph(3, 3);
  auto mg = median_graph_median(g);
  const auto r = is_convex(mg, VertexSet::of(9, {0, 8}));
  CHECK_FALSE(r.convex);
  CHECK(r.a1 == 0);
  CHECK(r.a2 == 8);
  CHECK(r.escaping != 0);
  CHECK(r.escaping != 8);
  CHECK(metric_interval_set(*g, 0, 8).contains(r.escaping));
}

namespace {

/// Brute force: is some 2^r-subset closed under op and isomorphic to the
/// majority cube? Tries every closed subset and every bijection.
bool oracle_has_cube(const TernaryOperator& op, std::size_t r) {
  const auto n = op.size();
  const std::size_t k = std::size_t{1} << r;
  std::vector<Vertex> subset(k);
  std::function<bool(std::size_t, Vertex)> choose = [&](std::size_t i, Vertex start) -> bool {
    if (i == k) {
      for (auto a : subset)
        for (auto b : subset)
          for (auto c : subset)
            if (std::find(subset.begin(), subset.end(), op(a, b, c)) == subset.end()) return false;
      auto perm = subset;
      std::sort(perm.begin(), perm.end());
      do {
        bool ok = true;
        for (std::size_t a = 0; a < k && ok; ++a)
          for (std::size_t b = 0; b < k && ok; ++b)
            for (std::size_t c = 0; c < k && ok; ++c)
              ok = op(perm[a], perm[b], perm[c]) == perm[oracle::majority(a, b, c)];
        if (ok) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    for (Vertex v = start; v < n; ++v) {
      subset[i] = v;
      if (choose(i + 1, v + 1)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

}  // namespace

TEST_CASE("rank") {
  auto p5 = tree_median(path_graph(5));
  auto r = rank_estimate(p5);
  CHECK(r.rank == 1);
  CHECK(oracle_has_cube(p5, 1));
  CHECK_FALSE(oracle_has_cube(p5, 2));

  auto p3 = path_graph(3);
  auto grid = gen_product({p3, p3});
  auto mg = product_median(grid, {tree_median(p3), tree_median(p3)});
  r = rank_estimate(mg);
  CHECK(r.rank == 2);
  CHECK(is_cube_embedding(mg, r.cube_witness));
  CHECK(oracle_has_cube(mg, 2));

  auto mq = median_graph_median(hypercube_graph(3));
  r = rank_estimate(mq);
  CHECK(r.rank == 3);
  CHECK(is_cube_embedding(mq, r.cube_witness));
  CHECK(oracle_has_cube(mq, 3));

  // Products of p trees that each branch have rank exactly p.
  auto star = star_graph(3);
  auto ms = tree_median(star);
  std::vector<SpacePtr> factors;
  std::vector<TernaryOperator> ops;
  for (std::size_t p = 1; p <= 3; ++p) {
    factors.push_back(star);
    ops.push_back(ms);
    auto prod = gen_product(factors);
    auto op = p == 1 ? ms : product_median(prod, ops);
    const auto est = rank_estimate(op);
    CHECK(est.rank == p);
    CHECK(is_cube_embedding(op, est.cube_witness));
    if (p == 2) CHECK_FALSE(oracle_has_cube(op, 3));
  }

  for (std::uint64_t seed : {1, 2}) {
    auto t = tree_median(random_tree(12, seed));
    CHECK(rank_estimate(t).rank == 1);
    CHECK_FALSE(oracle_has_cube(t, 2));
  }
  CHECK(rank_estimate(tree_median(path_graph(1))).rank == 0);
  CHECK(code_of([&] { rank_estimate(mq, RankOptions{4}); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("operator table files") {
  auto g = grid_graph(2, 3);
  auto m = median_graph_median(g);
  const auto csv = serialize_operator_table(m);
  auto loaded = load_operator_table(g, csv);
  CHECK(loaded.kind() == OperatorKind::kCustomTable);
  for (Vertex x = 0; x < 6; ++x)
    for (Vertex y = 0; y < 6; ++y)
      for (Vertex z = 0; z < 6; ++z) REQUIRE(loaded(x, y, z) == m(x, y, z));
  CHECK(serialize_operator_table(loaded) == csv);

  auto p2 = path_graph(2);
  CHECK(code_of([&] { load_operator_table(p2, "0,0,0,0\n0,0,1,0\n1,1,1,1\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([&] { load_operator_table(p2, "0,0,0,0\n0,0,1,1\n0,1,1,1\n1,1,1,1\n"); }) == ErrorCode::kM0Violated);
  CHECK(code_of([&] { load_operator_table(p2, "0,0,0,0\n0,0,1,0\n0,1,1,1\n1,1,1,1\n1,0,1,1\n"); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([&] { load_operator_table(p2, "0,0,0,0\n0,0,1,0\n0,0,1,0\n0,1,1,1\n1,1,1,1\n"); }) ==
        ErrorCode::kParseError);
  CHECK(load_operator_table(p2, "# ok\n0,0,0,0\n0,0,1,0\n0,1,1,1\n1,1,1,1\n")(1, 0, 0) == 0);
}
