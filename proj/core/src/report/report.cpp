#include "medianlab/report/report.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "medianlab/coarse/certificate.hpp"
#include "medianlab/coarse/lemma22.hpp"
#include "medianlab/coarse/quasigeodesic.hpp"
#include "medianlab/constructions/relhyp.hpp"
#include "medianlab/hyperbolic/barycentre.hpp"
#include "medianlab/hyperbolic/morse.hpp"
#include "medianlab/hyperbolic/uniqueness.hpp"
#include "medianlab/metric/graph_io.hpp"

#ifndef MEDIANLAB_VERSION
#define MEDIANLAB_VERSION "0.0.0"
#endif

namespace medianlab {

std::string_view tool_version() { return MEDIANLAB_VERSION; }

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

Json error_json(const Error& error) {
  Json j;
  j["schema"] = kReportSchema;
  j["error"] = {{"code", std::string(error_name(error.code()))},
                {"exit_code", exit_code_for(error.code())},
                {"message", error.what()},
                {"tuple", error.tuple()}};
  return j;
}

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

std::uint64_t spec_number(const std::string& spec, const std::string& token) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "spec '" + spec + "': bad number '" + token + "'");
  }
}

Vertex vertex_in(const GraphSpace& g, const std::string& spec, const std::string& token) {
  const auto v = spec_number(spec, token);
  if (v >= g.size()) throw Error(ErrorCode::kInvalidParams, "spec '" + spec + "': vertex " + token + " out of range");
  return static_cast<Vertex>(v);
}

/// Spaces and operators rebuilt from specs, shared across a run.
class Context {
 public:
  explicit Context(std::size_t max_vertices) : max_vertices_(max_vertices) {}

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

Json space_json(const SpaceBundle& b) {
  return {{"spec", b.spec},
          {"name", b.space->name()},
          {"n", b.space->size()},
          {"edges", b.space->edges().size()},
          {"diameter", b.space->diameter()},
          {"peripherals", b.peripherals.size()}};
}

Json operator_json(const std::string& spec, const TernaryOperator& op) {
  return {{"spec", spec},
          {"kind", std::string(kind_name(op.kind()))},
          {"label", op.label()},
          {"dense", op.dense()},
          {"symmetric", op.symmetric()}};
}

std::string timestamp_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json base_report(const ExperimentConfig& config) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "medianlab"}, {"version", std::string(tool_version())}};
  j["command"] = config.command;
  if (config.timestamp) j["timestamp"] = timestamp_now();
  j["config"] = config_to_json(config);
  return j;
}

Json witness(const std::string& id, const std::string& check) { return {{"id", id}, {"check", check}}; }

const std::string& op_spec(const ExperimentConfig& c, std::size_t i) {
  if (c.operators.size() <= i)
    throw Error(ErrorCode::kInvalidParams, c.command + " needs at least " + std::to_string(i + 1) + " operator(s)");
  return c.operators[i];
}

// ---- certificate cache ---------------------------------------------------

std::string cache_key(const std::string& space, const std::string& op, std::size_t cap) {
  return space + "|" + op + "|" + std::to_string(cap);
}

bool cacheable(const std::string& space, const std::string& op) {
  return space.find("file:") == std::string::npos && op.rfind("table:", 0) != 0;
}

std::filesystem::path cache_path(const std::string& dir, const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : key) h = (h ^ ch) * 1099511628211ULL;
  std::ostringstream name;
  name << "cert-" << std::hex << h << ".json";
  return std::filesystem::path(dir) / name.str();
}

Json certificate_json(const CoarseCertificate& c) {
  return {{"m0", c.m0_exact},
          {"cm1", c.cm1_error},
          {"cm2", c.cm2_constant.str()},
          {"C", c.C.str()},
          {"step_bound", c.step_bound()},
          {"cm1_witness", c.cm1_witness},
          {"cm2_witness", c.cm2_witness}};
}

CoarseCertificate certificate_from_json(const Json& j) {
  CoarseCertificate c;
  c.m0_exact = j.at("m0").get<bool>();
  c.cm1_error = j.at("cm1").get<Distance>();
  c.cm2_constant = Ratio::parse(j.at("cm2").get<std::string>());
  c.C = Ratio::parse(j.at("C").get<std::string>());
  c.cm1_witness = j.at("cm1_witness").get<std::array<Vertex, 4>>();
  c.cm2_witness = j.at("cm2_witness").get<std::array<Vertex, 4>>();
  return c;
}

CoarseCertificate cached_certificate(const std::string& space, const std::string& op_spec_text,
                                     const TernaryOperator& op, std::size_t cap) {
  const char* dir = std::getenv("MEDIANLAB_CACHE");
  const bool use_cache = dir && *dir && cacheable(space, op_spec_text);
  const auto key = cache_key(space, op_spec_text, cap);
  if (use_cache) {
    std::ifstream in(cache_path(dir, key));
    if (in) {
      try {
        const auto j = Json::parse(in);
        if (j.at("key") == key) return certificate_from_json(j.at("certificate"));
      } catch (const std::exception&) {
        // A damaged entry is recomputed and overwritten.
      }
    }
  }
  const auto cert = certify(op, CertifyOptions{cap});
  if (use_cache) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(cache_path(dir, key));
    if (out) out << Json{{"key", key}, {"certificate", certificate_json(cert)}}.dump() << "\n";
  }
  return cert;
}

void add_certificate_witnesses(Json& w, const CoarseCertificate& c, int op_index) {
  auto cm1 = witness("cm1", "cm1");
  cm1["operator"] = op_index;
  cm1["tuple"] = c.cm1_witness;
  cm1["value"] = c.cm1_error;
  w.push_back(cm1);
  auto cm2 = witness("cm2", "cm2");
  cm2["operator"] = op_index;
  cm2["tuple"] = c.cm2_witness;
  cm2["value"] = c.cm2_constant.str();
  w.push_back(cm2);
}

std::string triple_text(const std::array<Vertex, 3>& t) {
  return std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]);
}

std::string scope_name(const ClosenessScope& scope) {
  if (std::holds_alternative<ExhaustiveScope>(scope)) return "exhaustive";
  if (const auto* b = std::get_if<BallScope>(&scope))
    return "ball:" + std::to_string(b->center) + ":" + std::to_string(b->radius);
  const auto& s = std::get<SampleScope>(scope);
  return "sample:" + std::to_string(s.samples) + ":seed=" + std::to_string(s.seed);
}

Json closeness_json(const ClosenessReport& r) {
  return {{"sup", r.sup_distance},
          {"argmax", r.argmax},
          {"scope", scope_name(r.scope)},
          {"sampled", r.sampled},
          {"triples_checked", r.triples_checked}};
}

Json closeness_witness(const std::string& id, const ClosenessReport& r) {
  auto w = witness(id, "closeness");
  w["operators"] = {0, 1};
  w["tuple"] = r.argmax;
  w["value"] = r.sup_distance;
  return w;
}

Json chain_json(const QuasiChain& c) {
  return {{"points", c.points},
          {"L", c.L.str()},
          {"A", c.A.str()},
          {"max_step", c.max_step},
          {"index_excess", c.index_excess},
          {"empirical_L", c.empirical_L.str()}};
}

// ---- commands ------------------------------------------------------------

Report cmd_certify(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto cert = cached_certificate(config.space, spec, op, config.sweep_cap);
  j["axiom_constants"] = certificate_json(cert);
  Json w = Json::array();
  add_certificate_witnesses(w, cert, 0);
  if (b.space->size() <= HyperbolicityOptions{}.max_vertices) {
    const auto h = estimate_hyperbolicity(*b.space);
    j["hyperbolicity"] = {{"4PC-delta", h.delta.str()}, {"quadruple", h.witness}};
    auto hw = witness("4PC-delta", "four_point");
    hw["tuple"] = h.witness;
    hw["value"] = h.delta.str();
    w.push_back(hw);
  }
  if (op.size() <= 128) {
    const auto ax = check_median_axioms(op);
    j["median_axioms"] = {{"ok", ax.ok}, {"axiom", ax.axiom}, {"tuple", ax.tuple}, {"lhs", ax.lhs}, {"rhs", ax.rhs}};
    auto mw = witness("median_axioms", "median_axioms");
    mw["operator"] = 0;
    mw["value"] = ax.ok;
    w.push_back(mw);
  }
  j["witnesses"] = w;
  return {j, {}};
}

Report cmd_closeness(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& mu = ctx.op(config.space, op_spec(config, 0));
  const auto& nu = ctx.op(config.space, op_spec(config, 1));
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(config.operators[0], mu), operator_json(config.operators[1], nu)});
  const auto r = closeness(mu, nu, parse_scope(config.scope, config.seed));
  j["closeness"] = closeness_json(r);
  j["witnesses"] = Json::array({closeness_witness("closeness", r)});
  return {j, {}};
}

Report cmd_lemma22(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto cert = cached_certificate(config.space, spec, op, config.sweep_cap);
  j["axiom_constants"] = certificate_json(cert);
  LemmaOptions opts;
  opts.samples = config.samples;
  opts.seed = config.seed;
  const auto suite = lemma22_suite(op, cert, opts);
  Json parts;
  Json w = Json::array();
  for (const auto& part : suite.parts) {
    Json levels = Json::array();
    for (const auto& l : part.levels) {
      levels.push_back({{"level", l.level},
                        {"value", l.value},
                        {"tuple", l.tuple},
                        {"set", l.set},
                        {"bound", l.bound.str()}});
      auto lw = witness("lemma22.part" + std::to_string(part.part) + ".level" + std::to_string(l.level), "lemma22");
      lw["operator"] = 0;
      lw["part"] = part.part;
      lw["level"] = l.level;
      lw["tuple"] = l.tuple;
      lw["set"] = l.set;
      lw["value"] = l.value;
      w.push_back(lw);
    }
    parts[std::to_string(part.part)] = {{"status", std::string(status_name(part.status))},
                                        {"K", part.K.str()},
                                        {"holds", part.holds},
                                        {"checked", part.checked},
                                        {"note", part.note},
                                        {"levels", levels}};
  }
  j["lemma22"] = parts;
  add_certificate_witnesses(w, cert, 0);
  j["witnesses"] = w;
  return {j, {}};
}

Report cmd_quasigeo(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto cert = cached_certificate(config.space, spec, op, config.sweep_cap);
  j["axiom_constants"] = certificate_json(cert);
  Json w = Json::array();
  add_certificate_witnesses(w, cert, 0);
  auto chain_witness = [&](const std::string& id, Vertex x, Vertex y, const QuasiChain& c) {
    auto cw = witness(id, "chain");
    cw["operator"] = 0;
    cw["endpoints"] = {x, y};
    cw["step_bound"] = cert.step_bound();
    cw["chain"] = chain_json(c);
    return cw;
  };
  auto through_witness = [&](const std::string& id, Vertex x, Vertex y, Vertex p, const ThroughPointChain& t) {
    auto tw = witness(id, "through_point");
    tw["operator"] = 0;
    tw["endpoints"] = {x, y, p};
    tw["projected"] = t.projected;
    tw["adjustment"] = t.adjustment;
    tw["passes_within"] = t.passes_within;
    tw["inside_interval"] = t.inside_interval;
    tw["chain"] = chain_json(t.chain);
    return tw;
  };
  const auto& v = config.vertices;
  if (!v.empty()) {
    if (v.size() < 2 || v.size() > 3)
      throw Error(ErrorCode::kInvalidParams, "quasigeo takes vertices x,y or x,y,p");
    for (auto u : v)
      if (u >= op.size()) throw Error(ErrorCode::kInvalidParams, "vertex out of range", v);
    const auto c = extract_quasigeodesic(op, cert, v[0], v[1]);
    j["quasigeodesic"] = chain_json(c);
    w.push_back(chain_witness("chain", v[0], v[1], c));
    if (v.size() == 3) {
      const auto t = through_point_quasigeodesic(op, cert, v[0], v[1], v[2]);
      j["through_point"] = {{"p", v[2]},
                            {"projected", t.projected},
                            {"adjustment", t.adjustment},
                            {"passes_within", t.passes_within},
                            {"inside_interval", t.inside_interval},
                            {"chain", chain_json(t.chain)}};
      w.push_back(through_witness("through_point", v[0], v[1], v[2], t));
    }
  } else {
    // Every pair, every p in [x,y]; report the worst cases.
    const auto n = static_cast<Vertex>(op.size());
    std::int64_t worst_excess = -1;
    Distance worst_step = 0, worst_pass = -1;
    std::array<Vertex, 2> excess_pair{};
    std::array<Vertex, 3> pass_triple{};
    bool inside = true;
    std::uint64_t chains = 0, through = 0;
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y) {
        const auto c = extract_quasigeodesic(op, cert, x, y);
        ++chains;
        worst_step = std::max(worst_step, c.max_step);
        if (c.index_excess > worst_excess) {
          worst_excess = c.index_excess;
          excess_pair = {x, y};
        }
        for (auto p : coarse_interval(op, x, y).members.members()) {
          const auto t = through_point_quasigeodesic(op, cert, x, y, p);
          ++through;
          inside = inside && t.inside_interval;
          if (t.passes_within > worst_pass) {
            worst_pass = t.passes_within;
            pass_triple = {x, y, p};
          }
        }
      }
    j["quasigeodesic"] = {{"pairs", chains},
                          {"max_step", worst_step},
                          {"max_index_excess", std::max<std::int64_t>(worst_excess, 0)},
                          {"worst_pair", excess_pair},
                          {"through_point_chains", through},
                          {"max_passes_within", std::max<Distance>(worst_pass, 0)},
                          {"worst_through_point", pass_triple},
                          {"all_inside_interval", inside}};
    if (chains > 0) {
      const auto c = extract_quasigeodesic(op, cert, excess_pair[0], excess_pair[1]);
      w.push_back(chain_witness("worst_chain", excess_pair[0], excess_pair[1], c));
      const auto t = through_point_quasigeodesic(op, cert, pass_triple[0], pass_triple[1], pass_triple[2]);
      w.push_back(through_witness("worst_through_point", pass_triple[0], pass_triple[1], pass_triple[2], t));
    }
  }
  j["witnesses"] = w;
  return {j, {}};
}

Json quasiconvexity_witness(const std::string& id, const std::string& subset, const QuasiconvexityReport& q) {
  auto w = witness(id, "quasiconvexity");
  w["operator"] = 0;
  w["subset"] = subset;
  w["tuple"] = {q.a1, q.a2, q.z};
  w["value"] = q.constant;
  return w;
}

Report cmd_quasiconvexity(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto subset = parse_subset(config.subset, b);
  const auto q = quasiconvexity(op, subset);
  j["quasiconvexity"] = {{"subset", config.subset},
                         {"size", subset.count()},
                         {"constant", q.constant},
                         {"witness", {q.a1, q.a2, q.z}},
                         {"escaping", q.escaping}};
  j["witnesses"] = Json::array({quasiconvexity_witness("quasiconvexity", config.subset, q)});
  return {j, {}};
}

Report cmd_rank(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto r = rank_estimate(op);
  j["rank"] = {{"rank", r.rank}, {"cube", r.cube_witness}};
  auto w = witness("rank", "cube");
  w["operator"] = 0;
  w["cube"] = r.cube_witness;
  w["value"] = r.rank;
  j["witnesses"] = Json::array({w});
  return {j, {}};
}

Json barycentre_json(const BarycentreResult& r) {
  Json j{{"kind", r.kind == BarycentreKind::kPoint ? "point" : "peripheral"}, {"b", r.b}};
  if (r.kind == BarycentreKind::kPeripheral) {
    j["peripheral"] = r.peripheral;
    j["a"] = r.a;
    j["c"] = r.c;
  }
  j["delta"] = r.delta_used;
  return j;
}

Json barycentre_witness(const std::string& id, const std::string& space, const std::array<Vertex, 3>& t,
                        const BarycentreResult& r) {
  auto w = witness(id, "barycentre");
  w["space"] = space;
  w["tuple"] = t;
  w["result"] = barycentre_json(r);
  return w;
}

Json no_barycentre_witness(const std::string& id, const std::string& space, const std::array<Vertex, 3>& t,
                           Distance delta) {
  auto w = witness(id, "no_barycentre");
  w["space"] = space;
  w["tuple"] = t;
  w["delta"] = delta;
  return w;
}

struct BarycentreSweep {
  Distance delta = 0;
  BarycentreClassifier::Sweep at_delta;
  Distance minimal = 0;
  std::optional<std::array<Vertex, 3>> below_minimal;
};

BarycentreSweep sweep_barycentres(const SpaceBundle& b, Distance delta) {
  BarycentreClassifier cl(b.space, b.peripherals);
  BarycentreSweep out;
  out.delta = delta;
  for (Distance d = 0;; ++d) {
    cl.set_delta(d);
    const auto s = cl.sweep();
    if (s.all_classified) {
      out.minimal = d;
      break;
    }
    out.below_minimal = s.failure;
    if (d > b.space->diameter()) throw Error(ErrorCode::kNoBarycentre, "no delta classifies every triple");
  }
  cl.set_delta(delta);
  out.at_delta = cl.sweep();
  return out;
}

Report cmd_barycentre(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  j["space"] = space_json(b);
  const auto delta = config.delta >= 0 ? config.delta : default_barycentre_delta(*b.space, b.peripherals);
  Json w = Json::array();
  if (!config.vertices.empty()) {
    if (config.vertices.size() != 3) throw Error(ErrorCode::kInvalidParams, "barycentre takes vertices x,y,z");
    const std::array<Vertex, 3> t{config.vertices[0], config.vertices[1], config.vertices[2]};
    const auto r = barycentre(*b.space, b.peripherals, t[0], t[1], t[2], delta);
    j["barycentre"] = {{"tuple", t}, {"result", barycentre_json(r)}};
    w.push_back(barycentre_witness("barycentre", config.space, t, r));
  } else {
    const auto s = sweep_barycentres(b, delta);
    j["barycentre"] = {{"delta", delta},
                       {"all_classified", s.at_delta.all_classified},
                       {"points", s.at_delta.points},
                       {"peripheral", s.at_delta.peripheral},
                       {"minimal_delta", s.minimal}};
    if (!s.at_delta.all_classified)
      w.push_back(no_barycentre_witness("unclassified", config.space, s.at_delta.failure, delta));
    if (s.below_minimal)
      w.push_back(no_barycentre_witness("minimal_delta", config.space, *s.below_minimal, s.minimal - 1));
  }
  j["witnesses"] = w;
  return {j, {}};
}

// ---- experiments ---------------------------------------------------------

Report exp_uniqueness(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  if (config.operators.size() < 2) throw Error(ErrorCode::kInvalidParams, "uniqueness needs two or more operators");
  std::vector<TernaryOperator> ops;
  Json opj = Json::array();
  for (const auto& s : config.operators) {
    ops.push_back(ctx.op(config.space, s));
    opj.push_back(operator_json(s, ops.back()));
  }
  j["space"] = space_json(b);
  j["operators"] = opj;
  const auto radii = config.radii.empty() ? std::vector<Distance>{4, 8, 16} : config.radii;
  const Vertex basepoint = config.vertices.empty() ? 0 : config.vertices[0];
  const auto curve = uniqueness_experiment(ops, radii, basepoint);
  std::ostringstream csv;
  csv << "radius,pair,sup_distance,witness\n";
  Json rows = Json::array();
  Json w = Json::array();
  for (const auto& p : curve.points) {
    csv << p.radius << ',' << p.pair << ',' << p.sup_distance << ',' << triple_text(p.witness) << '\n';
    rows.push_back({{"radius", p.radius},
                    {"pair", p.pair},
                    {"sup_distance", p.sup_distance},
                    {"witness", p.witness},
                    {"triples_checked", p.triples_checked}});
    auto cw = witness("curve." + p.pair + ".r" + std::to_string(p.radius), "closeness");
    cw["operators"] = {p.first, p.second};
    cw["tuple"] = p.witness;
    cw["value"] = p.sup_distance;
    w.push_back(cw);
  }
  j["uniqueness"] = {{"basepoint", basepoint}, {"radii", radii}, {"curve", rows}};
  j["witnesses"] = w;
  return {j, csv.str()};
}

Report exp_shear(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto sizes = config.sizes.empty() ? std::vector<std::size_t>{8, 16, 32} : config.sizes;
  std::ostringstream csv;
  csv << "n,pair,sup_distance,witness\n";
  Json rows = Json::array();
  Json w = Json::array();
  for (auto n : sizes) {
    if (n == 0) throw Error(ErrorCode::kInvalidParams, "shear sizes must be positive");
    const auto spec = "band:" + std::to_string(n);
    const auto& b = ctx.space(spec);
    const auto& st = ctx.op(spec, "standard");
    const auto& sh = ctx.op(spec, "sheared");
    const auto& shear = *b.shear;
    const auto N = static_cast<Distance>(n);
    const std::array<Vertex, 3> canonical{window_vertex(shear, 0, N), window_vertex(shear, static_cast<Vertex>(n), N),
                                          window_vertex(shear, 0, 2 * N)};
    const auto canonical_gap = b.space->dist(st(canonical[0], canonical[1], canonical[2]),
                                             sh(canonical[0], canonical[1], canonical[2]));
    Json row{{"n", n}, {"space", spec}, {"window_vertices", b.space->size()}};
    ClosenessReport close;
    std::string scope;
    if (b.space->size() <= config.sweep_cap) {
      close = closeness(st, sh);
      scope = "exhaustive";
    } else {
      close = closeness(st, sh, SampleScope{config.samples, config.seed});
      scope = "sample+witness";
      if (canonical_gap > close.sup_distance) {
        close.sup_distance = canonical_gap;
        close.argmax = canonical;
      }
    }
    row["closeness"] = {{"sup", close.sup_distance}, {"argmax", close.argmax}, {"scope", scope}};
    row["canonical_triple"] = {{"tuple", canonical}, {"distance", canonical_gap}};
    auto cw = witness("shear.n" + std::to_string(n), "closeness");
    cw["space"] = spec;
    cw["operators"] = {"standard", "sheared"};
    cw["tuple"] = close.argmax;
    cw["value"] = close.sup_distance;
    w.push_back(cw);
    if (b.space->size() <= config.sweep_cap) {
      const auto cert = cached_certificate(spec, "sheared", sh, config.sweep_cap);
      row["sheared_certificate"] = certificate_json(cert);
      for (const auto& [id, tuple, value] :
           {std::tuple{std::string("cm1"), cert.cm1_witness, Json(cert.cm1_error)},
            std::tuple{std::string("cm2"), cert.cm2_witness, Json(cert.cm2_constant.str())}}) {
        auto ww = witness("shear.n" + std::to_string(n) + "." + id, id);
        ww["space"] = spec;
        ww["operators"] = {"sheared"};
        ww["operator"] = 0;
        ww["tuple"] = tuple;
        ww["value"] = value;
        w.push_back(ww);
      }
    } else {
      row["sheared_certificate"] = nullptr;
      row["note"] = "certificate skipped: window exceeds sweep_cap";
    }
    rows.push_back(row);
    csv << n << ",standard|sheared," << close.sup_distance << ',' << triple_text(close.argmax) << '\n';
  }
  j["shear"] = rows;
  j["witnesses"] = w;
  return {j, csv.str()};
}

Report exp_barycentre(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto sizes = config.sizes.empty() ? std::vector<std::size_t>{4, 8, 16} : config.sizes;
  std::ostringstream csv;
  csv << "flat_size,n,delta,minimal_delta,points,peripheral,all_classified\n";
  Json rows = Json::array();
  Json w = Json::array();
  for (auto k : sizes) {
    const auto spec = "relhyp:" + std::to_string(k) + ":" + std::to_string(2 * k);
    const auto& b = ctx.space(spec);
    const auto toy = gen_relhyp_toy(k, {2 * k, 2 * k, 2 * k});
    const auto delta = config.delta >= 0 ? config.delta : default_barycentre_delta(*b.space, b.peripherals);
    const auto s = sweep_barycentres(b, delta);
    const auto ends = toy.ray_ends;
    Json row{{"flat_size", k},
             {"space", spec},
             {"n", b.space->size()},
             {"delta", delta},
             {"all_classified", s.at_delta.all_classified},
             {"points", s.at_delta.points},
             {"peripheral", s.at_delta.peripheral},
             {"minimal_delta", s.minimal}};
    try {
      const auto r = barycentre(*b.space, b.peripherals, ends[0], ends[1], ends[2], delta);
      row["ray_ends"] = {{"tuple", ends}, {"result", barycentre_json(r)}};
      w.push_back(barycentre_witness("relhyp" + std::to_string(k) + ".ray_ends", spec, ends, r));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoBarycentre) throw;
      row["ray_ends"] = {{"tuple", ends}, {"result", nullptr}};
      w.push_back(no_barycentre_witness("relhyp" + std::to_string(k) + ".ray_ends", spec, ends, delta));
    }
    if (!s.at_delta.all_classified)
      w.push_back(no_barycentre_witness("relhyp" + std::to_string(k) + ".unclassified", spec, s.at_delta.failure,
                                        delta));
    if (s.below_minimal)
      w.push_back(no_barycentre_witness("relhyp" + std::to_string(k) + ".minimal_delta", spec, *s.below_minimal,
                                        s.minimal - 1));
    rows.push_back(row);
    csv << k << ',' << b.space->size() << ',' << delta << ',' << s.minimal << ',' << s.at_delta.points << ','
        << s.at_delta.peripheral << ',' << (s.at_delta.all_classified ? "true" : "false") << '\n';
  }
  j["barycentre"] = rows;
  j["witnesses"] = w;
  return {j, csv.str()};
}

Report exp_morse(const ExperimentConfig& config, Context& ctx) {
  auto j = base_report(config);
  const auto& b = ctx.space(config.space);
  const auto& spec = op_spec(config, 0);
  const auto& op = ctx.op(config.space, spec);
  j["space"] = space_json(b);
  j["operators"] = Json::array({operator_json(spec, op)});
  const auto subset = parse_subset(config.subset, b);
  MorseOptions mo;
  mo.corpus_size = config.corpus;
  mo.seed = config.seed;
  const auto gauge = morse_gauge(*b.space, subset, mo);
  const auto cert = cached_certificate(config.space, spec, op, config.sweep_cap);
  MorseCheckOptions co;
  co.slack = config.slack;
  co.seed = config.seed;
  const auto check = morse_implies_quasiconvex_check(op, cert, subset, gauge, co);

  Json w = Json::array();
  Json levels = Json::array();
  for (const auto& l : gauge.levels) {
    levels.push_back({{"L", l.L.str()}, {"N", l.N}, {"accepted", l.accepted}, {"witness_path", l.witness}});
    const auto& p = gauge.corpus[l.witness];
    auto pw = witness("morse.L" + l.L.str(), "morse_path");
    pw["subset"] = config.subset;
    pw["L"] = l.L.str();
    pw["points"] = p.points;
    pw["empirical_L"] = p.empirical_L.str();
    pw["farthest"] = p.farthest;
    pw["value"] = p.excursion;
    w.push_back(pw);
  }
  j["morse"] = {{"subset", config.subset},
                {"size", subset.count()},
                {"corpus", gauge.corpus.size()},
                {"seed", gauge.seed},
                {"levels", levels}};
  j["axiom_constants"] = certificate_json(cert);
  j["quasiconvexity"] = {{"constant", check.quasiconvexity.constant},
                         {"witness", {check.quasiconvexity.a1, check.quasiconvexity.a2, check.quasiconvexity.z}}};
  j["morse_check"] = {{"c2_empirical", check.c2_empirical.str()},
                      {"c2_witness", check.c2_witness},
                      {"gauge_value", check.gauge_value},
                      {"slack", check.slack},
                      {"pairs_tested", check.pairs_tested},
                      {"holds", check.holds}};
  w.push_back(quasiconvexity_witness("quasiconvexity", config.subset, check.quasiconvexity));
  auto tw = witness("c2_empirical", "through_point_L");
  tw["operator"] = 0;
  tw["endpoints"] = check.c2_witness;
  tw["value"] = check.c2_empirical.str();
  w.push_back(tw);
  add_certificate_witnesses(w, cert, 0);
  j["witnesses"] = w;
  return {j, {}};
}

}  // namespace

VertexSet parse_subset(const std::string& spec, const SpaceBundle& bundle) {
  const auto& g = *bundle.space;
  VertexSet out(g.size());
  const auto parts = split(spec, ':');
  const auto& kind = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k + 1) throw Error(ErrorCode::kParseError, "subset spec '" + spec + "' is malformed");
  };
  if (kind == "all") {
    need(0);
    for (Vertex v = 0; v < g.size(); ++v) out.insert(v);
  } else if (kind == "peripheral") {
    need(1);
    const auto i = spec_number(spec, parts[1]);
    if (i >= bundle.peripherals.size()) throw Error(ErrorCode::kInvalidParams, "space has no peripheral " + parts[1]);
    out = bundle.peripherals[i];
  } else if (kind == "geodesic" || kind == "interval") {
    need(2);
    const auto x = vertex_in(g, spec, parts[1]), y = vertex_in(g, spec, parts[2]);
    out = kind == "geodesic" ? VertexSet::of(g.size(), geodesic_between(g, x, y).vertices)
                             : metric_interval_set(g, x, y);
  } else if (kind == "ball") {
    need(2);
    out = ball(g, vertex_in(g, spec, parts[1]), static_cast<Distance>(spec_number(spec, parts[2])));
  } else if (kind == "set") {
    need(1);
    for (const auto& t : split(parts[1], ',')) out.insert(vertex_in(g, spec, t));
  } else if (kind == "segments") {
    if (!bundle.product) throw Error(ErrorCode::kInvalidParams, "segments subsets need a product space");
    const auto& prod = *bundle.product;
    const auto body = spec.substr(spec.find(':') + 1);
    const auto segs = split(body, ',');
    if (segs.size() != prod.arity())
      throw Error(ErrorCode::kParseError, "subset spec '" + spec + "' needs one segment per factor");
    std::vector<std::vector<Vertex>> per;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto ends = split(segs[i], ':');
      if (ends.size() != 2) throw Error(ErrorCode::kParseError, "subset spec '" + spec + "' is malformed");
      const auto& f = *prod.factors[i];
      per.push_back(geodesic_between(f, vertex_in(f, spec, ends[0]), vertex_in(f, spec, ends[1])).vertices);
    }
    std::vector<Vertex> coords(per.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == per.size()) {
        out.insert(prod.encode(coords));
        return;
      }
      for (auto v : per[i]) {
        coords[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  } else {
    throw Error(ErrorCode::kParseError, "unknown subset spec '" + spec + "'");
  }
  if (out.empty()) throw Error(ErrorCode::kEmptySubset, "subset '" + spec + "' is empty");
  return out;
}

ClosenessScope parse_scope(const std::string& spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  if (parts[0] == "exhaustive" && parts.size() == 1) return ExhaustiveScope{};
  if (parts[0] == "ball" && parts.size() == 3)
    return BallScope{static_cast<Vertex>(spec_number(spec, parts[1])),
                     static_cast<Distance>(spec_number(spec, parts[2]))};
  if (parts[0] == "sample" && parts.size() == 2) return SampleScope{spec_number(spec, parts[1]), seed};
  throw Error(ErrorCode::kParseError, "unknown scope '" + spec + "'");
}

Report run_report(const ExperimentConfig& config) {
  Context ctx(config.max_vertices);
  const auto& c = config.command;
  if (c != "experiment" && config.space.empty()) throw Error(ErrorCode::kInvalidParams, c + " needs a space");
  if (c == "certify") return cmd_certify(config, ctx);
  if (c == "closeness") return cmd_closeness(config, ctx);
  if (c == "lemma22") return cmd_lemma22(config, ctx);
  if (c == "quasigeo") return cmd_quasigeo(config, ctx);
  if (c == "quasiconvexity") return cmd_quasiconvexity(config, ctx);
  if (c == "rank") return cmd_rank(config, ctx);
  if (c == "barycentre") return cmd_barycentre(config, ctx);
  if (c == "experiment") {
    const auto& e = config.experiment;
    if (e == "uniqueness") return exp_uniqueness(config, ctx);
    if (e == "shear") return exp_shear(config, ctx);
    if (e == "barycentre") return exp_barycentre(config, ctx);
    if (e == "morse") return exp_morse(config, ctx);
    throw Error(ErrorCode::kInvalidParams, "unknown experiment '" + e + "'");
  }
  throw Error(ErrorCode::kInvalidParams, "unknown command '" + c + "'");
}

}  // namespace medianlab
