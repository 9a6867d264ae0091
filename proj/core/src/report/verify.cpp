#include <algorithm>
#include <map>

#include "medianlab/coarse/lemma22.hpp"
#include "medianlab/coarse/quasigeodesic.hpp"
#include "medianlab/hyperbolic/barycentre.hpp"
#include "medianlab/hyperbolic/morse.hpp"
#include "medianlab/report/report.hpp"

namespace medianlab {

namespace {

class Rebuilt {
 public:
  explicit Rebuilt(std::size_t max_vertices) : max_vertices_(max_vertices) {}

  const SpaceBundle& space(const std::string& spec) {
    auto it = spaces_.find(spec);
    if (it == spaces_.end()) it = spaces_.emplace(spec, make_space(spec, max_vertices_)).first;
    return it->second;
  }

  const TernaryOperator& op(const std::string& space_spec, const std::string& op_spec) {
    const auto key = space_spec + "\n" + op_spec;
    auto it = ops_.find(key);
    if (it == ops_.end()) it = ops_.emplace(key, make_operator(op_spec, space(space_spec))).first;
    return it->second;
  }

 private:
  std::size_t max_vertices_;
  std::map<std::string, SpaceBundle> spaces_;
  std::map<std::string, TernaryOperator> ops_;
};

std::vector<Vertex> vertices_of(const Json& j) { return j.get<std::vector<Vertex>>(); }

std::array<Vertex, 3> triple_of(const Json& j) {
  const auto v = vertices_of(j);
  if (v.size() != 3) throw Error(ErrorCode::kParseError, "expected a vertex triple");
  return {v[0], v[1], v[2]};
}

void require_range(const TernaryOperator& op, const std::vector<Vertex>& t) {
  for (auto v : t)
    if (v >= op.size()) throw Error(ErrorCode::kVerificationFailed, "vertex out of range", t);
}

BarycentreResult barycentre_from(const Json& j) {
  BarycentreResult r;
  r.kind = j.at("kind") == "point" ? BarycentreKind::kPoint : BarycentreKind::kPeripheral;
  r.b = j.at("b").get<Vertex>();
  if (r.kind == BarycentreKind::kPeripheral) {
    r.peripheral = j.at("peripheral").get<std::size_t>();
    r.a = j.at("a").get<Vertex>();
    r.c = j.at("c").get<Vertex>();
  }
  r.delta_used = j.at("delta").get<Distance>();
  return r;
}

bool same_chain(const QuasiChain& fresh, const Json& stored) {
  return vertices_of(stored.at("points")) == fresh.points && stored.at("max_step") == fresh.max_step &&
         stored.at("index_excess") == fresh.index_excess &&
         stored.at("empirical_L").get<std::string>() == fresh.empirical_L.str();
}

/// Returns an empty string on success, otherwise the reason.
std::string check_witness(const Json& report, const Json& w, const ExperimentConfig& config, Rebuilt& rebuilt) {
  const auto check = w.at("check").get<std::string>();
  const auto space_spec = w.contains("space") ? w.at("space").get<std::string>() : config.space;

  std::vector<std::string> op_specs = config.operators;
  std::vector<std::size_t> op_indices;
  if (w.contains("operators")) {
    bool named = false;
    for (const auto& o : w.at("operators")) {
      if (o.is_string()) {
        if (!named) op_specs.clear();
        named = true;
        op_specs.push_back(o.get<std::string>());
        op_indices.push_back(op_specs.size() - 1);
      } else {
        op_indices.push_back(o.get<std::size_t>());
      }
    }
  }
  auto op_at = [&](std::size_t i) -> const TernaryOperator& {
    if (i >= op_specs.size()) throw Error(ErrorCode::kVerificationFailed, "operator index out of range");
    return rebuilt.op(space_spec, op_specs[i]);
  };
  const auto op_index = w.contains("operator") ? w.at("operator").get<std::size_t>() : std::size_t{0};
  auto claimed_C = [&]() {
    const Json* constants = nullptr;
    if (report.contains("axiom_constants")) constants = &report.at("axiom_constants");
    if (w.contains("step_bound")) {
      // step_bound = floor(2C); any C giving the same bound yields the same chains.
      return certificate_with(Ratio{w.at("step_bound").get<std::int64_t>(), 2});
    }
    if (!constants) throw Error(ErrorCode::kVerificationFailed, "no axiom constants to rebuild chains from");
    return certificate_with(Ratio::parse(constants->at("C").get<std::string>()));
  };

  if (check == "cm1") {
    const auto& op = op_at(op_index);
    const auto t = vertices_of(w.at("tuple"));
    require_range(op, t);
    const auto got = cm1_at(op, t[0], t[1], t[2], t[3]);
    return got == w.at("value").get<Distance>() ? "" : "cm1 recomputed as " + std::to_string(got);
  }
  if (check == "cm2") {
    const auto& op = op_at(op_index);
    const auto t = vertices_of(w.at("tuple"));
    require_range(op, t);
    const auto got = cm2_at(op, t[0], t[1], t[2], t[3]);
    return got == Ratio::parse(w.at("value").get<std::string>()) ? "" : "cm2 recomputed as " + got.str();
  }
  if (check == "median_axioms") {
    const auto ax = check_median_axioms(op_at(op_index));
    return ax.ok == w.at("value").get<bool>() ? "" : "median axiom scan disagrees";
  }
  if (check == "closeness") {
    if (op_indices.size() != 2) return "closeness needs two operators";
    const auto& mu = op_at(op_indices[0]);
    const auto& nu = op_at(op_indices[1]);
    const auto t = triple_of(w.at("tuple"));
    require_range(mu, {t[0], t[1], t[2]});
    const auto got = mu.space().dist(mu(t[0], t[1], t[2]), nu(t[0], t[1], t[2]));
    return got == w.at("value").get<Distance>() ? "" : "closeness recomputed as " + std::to_string(got);
  }
  if (check == "lemma22") {
    LemmaWitness lw;
    lw.level = w.at("level").get<int>();
    lw.value = w.at("value").get<Distance>();
    lw.tuple = vertices_of(w.at("tuple"));
    lw.set = vertices_of(w.at("set"));
    const auto got = evaluate_lemma_witness(op_at(op_index), w.at("part").get<int>(), lw);
    return got == lw.value ? "" : "lemma part recomputed as " + std::to_string(got);
  }
  if (check == "chain") {
    const auto& op = op_at(op_index);
    const auto e = vertices_of(w.at("endpoints"));
    require_range(op, e);
    const auto fresh = extract_quasigeodesic(op, claimed_C(), e[0], e[1]);
    return same_chain(fresh, w.at("chain")) ? "" : "chain differs on re-extraction";
  }
  if (check == "through_point") {
    const auto& op = op_at(op_index);
    const auto e = vertices_of(w.at("endpoints"));
    require_range(op, e);
    const auto fresh = through_point_quasigeodesic(op, claimed_C(), e[0], e[1], e[2]);
    const bool ok = same_chain(fresh.chain, w.at("chain")) && w.at("projected") == fresh.projected &&
                    w.at("passes_within") == fresh.passes_within && w.at("inside_interval") == fresh.inside_interval;
    return ok ? "" : "through-point chain differs on re-extraction";
  }
  if (check == "through_point_L") {
    const auto& op = op_at(op_index);
    const auto e = vertices_of(w.at("endpoints"));
    require_range(op, e);
    const auto fresh = through_point_quasigeodesic(op, claimed_C(), e[0], e[1], e[2]);
    return fresh.chain.empirical_L.str() == w.at("value").get<std::string>() ? ""
                                                                             : "through-point L recomputed as " +
                                                                                   fresh.chain.empirical_L.str();
  }
  if (check == "quasiconvexity") {
    const auto& op = op_at(op_index);
    const auto subset = parse_subset(w.at("subset").get<std::string>(), rebuilt.space(space_spec));
    const auto t = triple_of(w.at("tuple"));
    require_range(op, {t[0], t[1], t[2]});
    if (!subset.contains(t[0]) || !subset.contains(t[1])) return "quasiconvexity endpoints are not in the subset";
    const auto to_set = distances_to_set(op.space(), subset);
    const auto value = w.at("value").get<Distance>();
    if (to_set[op(t[0], t[1], t[2])] != value) return "escaping distance differs";
    const auto full = quasiconvexity(op, subset);
    return full.constant == value ? "" : "quasiconvexity constant recomputed as " + std::to_string(full.constant);
  }
  if (check == "cube") {
    const auto& op = op_at(op_index);
    const auto cube = vertices_of(w.at("cube"));
    require_range(op, cube);
    const auto rank = w.at("value").get<std::size_t>();
    if (cube.size() != (std::size_t{1} << rank)) return "cube has the wrong number of corners";
    return is_cube_embedding(op, cube) ? "" : "cube is not a median subalgebra";
  }
  if (check == "barycentre") {
    const auto& b = rebuilt.space(space_spec);
    const auto t = triple_of(w.at("tuple"));
    const auto r = barycentre_from(w.at("result"));
    return recheck_barycentre(*b.space, b.peripherals, t[0], t[1], t[2], r) ? "" : "barycentre fails its recheck";
  }
  if (check == "no_barycentre") {
    const auto& b = rebuilt.space(space_spec);
    const auto t = triple_of(w.at("tuple"));
    try {
      barycentre(*b.space, b.peripherals, t[0], t[1], t[2], w.at("delta").get<Distance>());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoBarycentre) return "";
      throw;
    }
    return "triple classifies at the stated delta";
  }
  if (check == "four_point") {
    const auto& g = *rebuilt.space(space_spec).space;
    const auto t = vertices_of(w.at("tuple"));
    if (t.size() != 4) return "four-point witness needs four vertices";
    for (auto v : t)
      if (v >= g.size()) return "vertex out of range";
    const auto got = four_point_delta(g, t[0], t[1], t[2], t[3]);
    return got.str() == w.at("value").get<std::string>() ? "" : "four-point delta recomputed as " + got.str();
  }
  if (check == "morse_path") {
    const auto& b = rebuilt.space(space_spec);
    const auto subset = parse_subset(w.at("subset").get<std::string>(), b);
    MorsePath p;
    p.points = vertices_of(w.at("points"));
    for (auto v : p.points)
      if (v >= b.space->size()) return "path vertex out of range";
    p.empirical_L = Ratio::parse(w.at("empirical_L").get<std::string>());
    p.excursion = w.at("value").get<Distance>();
    p.farthest = w.at("farthest").get<std::size_t>();
    if (p.empirical_L > Ratio::parse(w.at("L").get<std::string>())) return "path is not accepted at its level";
    return recheck_morse_path(*b.space, subset, p) ? "" : "corpus path fails its recheck";
  }
  return "unknown check '" + check + "'";
}

const Json* witness_by_id(const Json& report, const std::string& id) {
  for (const auto& w : report.at("witnesses"))
    if (w.value("id", std::string()) == id) return &w;
  return nullptr;
}

/// Headline constants must be the values their witnesses attain.
void check_claims(const Json& report, std::vector<std::string>& failures) {
  auto tie = [&](const Json& claimed, const std::string& id, const std::string& what) {
    const auto* w = witness_by_id(report, id);
    if (!w) return failures.push_back(what + ": no witness '" + id + "'");
    if (w->at("value") != claimed) failures.push_back(what + " differs from its witness");
  };
  if (report.contains("axiom_constants")) {
    const auto& a = report.at("axiom_constants");
    tie(a.at("cm1"), "cm1", "cm1");
    tie(a.at("cm2"), "cm2", "cm2");
    const auto cm2 = Ratio::parse(a.at("cm2").get<std::string>());
    const auto C = std::max({Ratio{1}, Ratio{a.at("cm1").get<std::int64_t>()}, cm2});
    if (Ratio::parse(a.at("C").get<std::string>()) != C) failures.push_back("C is not max(1, cm1, cm2)");
    if (a.at("step_bound") != certificate_with(C).step_bound()) failures.push_back("step_bound is not floor(2C)");
  }
  if (report.contains("hyperbolicity")) tie(report.at("hyperbolicity").at("4PC-delta"), "4PC-delta", "4PC-delta");
  if (report.contains("closeness") && report.at("closeness").contains("sup"))
    tie(report.at("closeness").at("sup"), "closeness", "closeness sup");
  if (report.contains("quasiconvexity"))
    tie(report.at("quasiconvexity").at("constant"), "quasiconvexity", "quasiconvexity constant");
  if (report.contains("rank")) tie(report.at("rank").at("rank"), "rank", "rank");
}

}  // namespace

VerifyResult verify_report(const Json& report) {
  VerifyResult out;
  if (!report.is_object() || report.value("schema", 0) != kReportSchema) {
    out.failures.push_back("not a schema " + std::to_string(kReportSchema) + " report");
    return out;
  }
  if (report.contains("error")) {
    out.failures.push_back("report records an error");
    return out;
  }
  const auto config = config_from_json(report.at("config"));
  Rebuilt rebuilt(config.max_vertices);
  if (!report.contains("witnesses")) {
    out.failures.push_back("report has no witnesses");
    return out;
  }
  try {
    check_claims(report, out.failures);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("malformed constants: ") + e.what());
  }
  for (const auto& w : report.at("witnesses")) {
    ++out.checked;
    const auto id = w.value("id", std::string("?"));
    try {
      const auto reason = check_witness(report, w, config, rebuilt);
      if (!reason.empty()) out.failures.push_back(id + ": " + reason);
    } catch (const Error& e) {
      out.failures.push_back(id + ": " + std::string(error_name(e.code())) + ": " + e.what());
    } catch (const Json::exception& e) {
      out.failures.push_back(id + ": malformed witness: " + e.what());
    }
  }
  return out;
}

}  // namespace medianlab
