#include "medianlab/constructions/catalog.hpp"

#include <charconv>

#include "medianlab/constructions/generators.hpp"
#include "medianlab/constructions/relhyp.hpp"
#include "medianlab/hyperbolic/triangle_center.hpp"
#include "medianlab/median/table_io.hpp"
#include "medianlab/metric/graph_io.hpp"

namespace medianlab {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::uint64_t number(const std::string& spec, const std::string& token) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw Error(ErrorCode::kParseError, "space spec '" + spec + "': expected a number, got '" + token + "'");
  return v;
}

void expect_args(const std::string& spec, const std::vector<std::string>& parts, std::size_t lo, std::size_t hi) {
  if (parts.size() - 1 < lo || parts.size() - 1 > hi)
    throw Error(ErrorCode::kParseError, "space spec '" + spec + "' has the wrong number of parameters");
}

void positive(const std::string& spec, std::uint64_t v) {
  if (v == 0) throw Error(ErrorCode::kInvalidParams, "space spec '" + spec + "' needs positive parameters");
}

SpaceBundle make_factor(const std::string& spec) {
  SpaceBundle b;
  b.spec = spec;
  b.provenance = "# medianlab space " + spec;
  if (spec.rfind("file:", 0) == 0) {
    const auto doc = read_graph_file(spec.substr(5));
    b.space = build_space(doc, spec);
    for (const auto& p : doc.peripherals) b.peripherals.push_back(VertexSet::of(doc.n, p));
    return b;
  }
  const auto parts = split(spec, ':');
  const auto& kind = parts[0];
  auto arg = [&](std::size_t i) { return number(spec, parts[i]); };
  if (kind == "path") {
    expect_args(spec, parts, 1, 1);
    positive(spec, arg(1));
    b.space = path_graph(arg(1));
  } else if (kind == "star") {
    expect_args(spec, parts, 1, 1);
    b.space = star_graph(arg(1));
  } else if (kind == "regular") {
    expect_args(spec, parts, 2, 2);
    b.space = regular_tree(arg(1), arg(2));
  } else if (kind == "random") {
    expect_args(spec, parts, 2, 2);
    positive(spec, arg(1));
    b.space = random_tree(arg(1), arg(2));
  } else if (kind == "trivalent") {
    expect_args(spec, parts, 1, 1);
    b.space = trivalent_tree(arg(1));
  } else if (kind == "tripod") {
    expect_args(spec, parts, 1, 1);
    positive(spec, arg(1));
    b.space = tripod_thickened(arg(1));
  } else if (kind == "cycle") {
    expect_args(spec, parts, 1, 1);
    b.space = cycle_graph(arg(1));
  } else if (kind == "grid") {
    expect_args(spec, parts, 2, 2);
    positive(spec, arg(1));
    positive(spec, arg(2));
    b.space = grid_graph(arg(1), arg(2));
  } else if (kind == "cube") {
    expect_args(spec, parts, 1, 1);
    b.space = hypercube_graph(arg(1));
  } else if (kind == "relhyp") {
    expect_args(spec, parts, 2, 2);
    const auto rays = split(parts[2], ',');
    if (rays.size() != 1 && rays.size() != 3)
      throw Error(ErrorCode::kParseError, "space spec '" + spec + "': give one ray length or three");
    std::array<std::size_t, 3> lengths{};
    for (std::size_t i = 0; i < 3; ++i) lengths[i] = number(spec, rays[rays.size() == 1 ? 0 : i]);
    auto toy = gen_relhyp_toy(arg(1), lengths);
    b.space = toy.space;
    b.peripherals = std::move(toy.peripherals);
  } else if (kind == "band") {
    expect_args(spec, parts, 1, 2);
    const auto n = arg(1);
    positive(spec, n);
    const auto T = parts.size() == 3 ? arg(2) : 3 * n;
    auto base = path_graph(n + 1);
    auto f = distance_function(*base, 0);
    b.shear = make_shear(base, std::move(f), static_cast<Distance>(T));
    b.product = shear_window(*b.shear);
    b.space = b.product->space;
    b.factor_specs = {"path:" + std::to_string(n + 1), "path:" + std::to_string(b.shear->rows())};
  } else {
    throw Error(ErrorCode::kParseError, "unknown space kind '" + kind + "'");
  }
  return b;
}

}  // namespace

SpaceBundle make_space(const std::string& spec, std::size_t max_vertices) {
  if (spec.empty()) throw Error(ErrorCode::kParseError, "empty space spec");
  if (spec.rfind("file:", 0) == 0 || spec.find('*') == std::string::npos) {
    auto b = make_factor(spec);
    if (b.space->size() > max_vertices)
      throw Error(ErrorCode::kSizeCapExceeded, spec + " has more than " + std::to_string(max_vertices) + " vertices");
    return b;
  }
  SpaceBundle b;
  b.spec = spec;
  b.provenance = "# medianlab space " + spec;
  std::vector<SpacePtr> factors;
  for (const auto& part : split(spec, '*')) {
    auto f = make_factor(part);
    if (f.shear) throw Error(ErrorCode::kParseError, "band spaces cannot be product factors");
    factors.push_back(f.space);
    b.factor_specs.push_back(part);
  }
  b.product = cartesian_product(factors, max_vertices, spec);
  b.space = b.product->space;
  return b;
}

TernaryOperator exact_median(SpacePtr space, const OperatorOptions& options) {
  if (space->is_tree()) return tree_median(std::move(space), options);
  return median_graph_median(std::move(space), MedianGraphOptions{options, 600});
}

TernaryOperator make_operator(const std::string& spec, const SpaceBundle& bundle) {
  auto need_product = [&] {
    if (!bundle.product)
      throw Error(ErrorCode::kInvalidParams, "operator '" + spec + "' needs a product space, got " + bundle.spec);
    return *bundle.product;
  };
  auto need_shear = [&] {
    if (!bundle.shear)
      throw Error(ErrorCode::kInvalidParams, "operator '" + spec + "' needs a band space, got " + bundle.spec);
    return *bundle.shear;
  };
  if (spec == "tree-median") return tree_median(bundle.space);
  if (spec == "median-graph") return median_graph_median(bundle.space);
  if (spec == "triangle-center") return triangle_center_median(bundle.space);
  if (spec == "product-median" || spec == "product-triangle-center") {
    const auto product = need_product();
    std::vector<TernaryOperator> ops;
    for (const auto& f : product.factors)
      ops.push_back(spec == "product-median" ? exact_median(f) : triangle_center_median(f));
    return product_median(product, ops, spec);
  }
  if (spec == "sheared" || spec == "standard") {
    const auto shear = need_shear();
    const auto base = tree_median(shear.base);
    return spec == "sheared" ? sheared_median(shear, base) : standard_window_median(shear, base);
  }
  if (spec.rfind("table:", 0) == 0) return load_operator_table(bundle.space, read_text_file(spec.substr(6)), spec);
  throw Error(ErrorCode::kParseError, "unknown operator '" + spec + "'");
}

}  // namespace medianlab
