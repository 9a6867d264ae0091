#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "medianlab/metric/graph_io.hpp"
#include "medianlab/parallel.hpp"
#include "medianlab/report/report.hpp"

namespace {

using namespace medianlab;

constexpr ErrorCode kAllErrors[] = {
    ErrorCode::kParseError,     ErrorCode::kSizeCapExceeded, ErrorCode::kDisconnectedGraph,
    ErrorCode::kInvalidEdge,    ErrorCode::kNotATree,        ErrorCode::kNotMedianGraph,
    ErrorCode::kArityMismatch,  ErrorCode::kM0Violated,      ErrorCode::kEmptySubset,
    ErrorCode::kNoChain,        ErrorCode::kEmptyCorpus,     ErrorCode::kNoBarycentre,
    ErrorCode::kSpaceMismatch,  ErrorCode::kWindowOverflow,  ErrorCode::kInvalidParams,
    ErrorCode::kVerificationFailed,
};

std::string exit_code_table() {
  std::ostringstream out;
  out << "Exit codes:\n  0  success\n  1  unexpected failure\n";
  for (auto code : kAllErrors) out << "  " << exit_code_for(code) << "  " << error_name(code) << "\n";
  out << "\nEnvironment:\n  MEDIANLAB_CACHE  directory for memoized certificates of generated spaces\n";
  return out.str();
}

/// Space arguments naming an existing file are read as graph files.
std::string space_argument(const std::string& value) {
  if (value.find(':') == std::string::npos && std::filesystem::is_regular_file(value)) return "file:" + value;
  return value;
}

/// Flattened scalars of a report as path,value rows.
std::string flat_csv(const Json& j) {
  std::ostringstream out;
  out << "path,value\n";
  for (const auto& [path, value] : j.flatten().items()) {
    auto text = value.is_string() ? value.get<std::string>() : value.dump();
    if (text.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      text = quoted + "\"";
    }
    out << path << ',' << text << '\n';
  }
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  write_text_file(out_path, text);
}

struct Global {
  unsigned threads = 1;
  std::string format = "json";
  std::string config_path;
  bool no_timestamp = false;
  std::string out;
};

/// Option values collected as text and applied on top of the config file.
struct Overrides {
  std::map<std::string, std::string> text;
  std::vector<std::string> operators;
  std::string space;
  std::string x, y, p, triple;
  std::size_t n = 0;
};

void add_options(CLI::App* sub, Overrides& o, const std::vector<std::string>& keys) {
  auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option(flag, o.text[key], help);
  };
  for (const auto& k : keys) {
    if (k == "space") sub->add_option("--space", o.space, "Space spec or graph file");
    else if (k == "op") sub->add_option("--op", o.operators, "Operator spec (repeatable)");
    else if (k == "scope") add("--scope", "scope", "exhaustive | ball:C:R | sample:K");
    else if (k == "subset")
      add("--subset", "subset", "all | peripheral:I | geodesic:X:Y | interval:X:Y | ball:C:R | set:V,... | segments:X:Y,...");
    else if (k == "vertices") add("--vertices", "vertices", "Comma-separated vertices");
    else if (k == "radii") add("--radii", "radii", "Comma-separated increasing radii");
    else if (k == "sizes") add("--sizes", "sizes", "Comma-separated sizes");
    else if (k == "seed") add("--seed", "seed", "Seed for sampling and corpora");
    else if (k == "samples") add("--samples", "samples", "Samples per sampled sweep");
    else if (k == "corpus") add("--corpus", "corpus", "Morse corpus size");
    else if (k == "sweep_cap") add("--sweep-cap", "sweep_cap", "Largest vertex count swept exhaustively");
    else if (k == "max_vertices") add("--max-vertices", "max_vertices", "Vertex cap for generated spaces");
    else if (k == "delta") add("--delta", "delta", "Barycentre delta (default: from the four-point delta)");
    else if (k == "slack") add("--slack", "slack", "Additive slack for the Morse check");
    else if (k == "xyp") {
      sub->add_option("--x", o.x, "First endpoint");
      sub->add_option("--y", o.y, "Second endpoint");
      sub->add_option("--p", o.p, "Point to pass through");
    } else if (k == "triple") {
      sub->add_option("--triple", o.triple, "Triple x,y,z");
    } else if (k == "n") {
      sub->add_option("--n", o.n, "Largest size; shear runs n/4, n/2, n");
    }
  }
}

ExperimentConfig build_config(const Global& g, const std::string& command, const std::string& experiment,
                              const Overrides& o) {
  ExperimentConfig config;
  if (!g.config_path.empty()) config = parse_config(read_text_file(g.config_path));
  config.command = command;
  if (!experiment.empty()) config.experiment = experiment;
  if (!o.space.empty()) config.space = space_argument(o.space);
  else if (!config.space.empty()) config.space = space_argument(config.space);
  if (!o.operators.empty()) config.operators = o.operators;
  for (const auto& [key, value] : o.text)
    if (!value.empty()) set_config_value(config, key, value);
  if (!o.x.empty() || !o.y.empty()) {
    if (o.x.empty() || o.y.empty()) throw Error(ErrorCode::kInvalidParams, "--x and --y go together");
    set_config_value(config, "vertices", o.x + "," + o.y + (o.p.empty() ? "" : "," + o.p));
  }
  if (!o.triple.empty()) set_config_value(config, "vertices", o.triple);
  if (o.n > 0) {
    if (o.n < 4) throw Error(ErrorCode::kInvalidParams, "--n must be at least 4");
    config.sizes = {o.n / 4, o.n / 2, o.n};
  }
  if (g.no_timestamp) config.timestamp = false;
  return config;
}

int run_gen(const Global& g, const std::string& spec_arg, const std::string& tree, std::size_t n,
            const std::string& seed) {
  std::string spec = spec_arg;
  if (spec.empty()) {
    if (tree.empty() || n == 0) throw Error(ErrorCode::kInvalidParams, "gen needs a spec or --tree with --n");
    spec = tree + ":" + std::to_string(n);
    if (tree == "random") spec += ":" + (seed.empty() ? std::string("1") : seed);
  }
  const auto bundle = make_space(spec);
  std::vector<std::vector<Vertex>> peripherals;
  for (const auto& p : bundle.peripherals) peripherals.push_back(p.members());
  const auto doc = to_document(*bundle.space, peripherals, {bundle.provenance});
  emit(serialize_graph(doc), g.out);
  return 0;
}

int run_verify(const Global& g, const std::string& path) {
  const auto report = Json::parse(read_text_file(path));
  const auto result = verify_report(report);
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = "verify";
  j["report"] = path;
  j["checked"] = result.checked;
  j["verified"] = result.ok();
  j["failures"] = result.failures;
  emit(render_json(j), g.out);
  if (!result.ok()) {
    for (const auto& f : result.failures) std::cerr << "verify: " << f << "\n";
    return exit_code_for(ErrorCode::kVerificationFailed);
  }
  return 0;
}

int run_command(const Global& g, const ExperimentConfig& config) {
  const auto report = run_report(config);
  if (g.format == "csv")
    emit(report.csv.empty() ? flat_csv(report.json) : report.csv, g.out);
  else
    emit(render_json(report.json), g.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medianlab: median and coarse median operators on finite graphs"};
  app.footer(exit_code_table());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  Global g;
  app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config_path, "Config file of key = value lines")->check(CLI::ExistingFile);
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp so reruns are byte-identical");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  std::string gen_spec, gen_tree, gen_seed;
  std::size_t gen_n = 0;
  auto* gen = app.add_subcommand("gen", "Write a generated space as a graph file");
  gen->add_option("spec", gen_spec, "Space spec, e.g. trivalent:3 or grid:4:4");
  gen->add_option("--tree", gen_tree, "Generator kind (path, star, trivalent, tripod, random, cycle, cube)");
  gen->add_option("--n", gen_n, "Size parameter for --tree");
  gen->add_option("--seed", gen_seed, "Seed for random trees");

  struct Verb {
    const char* name;
    const char* help;
    std::vector<std::string> keys;
  };
  const std::vector<std::string> common{"space", "op", "seed", "sweep_cap", "max_vertices"};
  auto with = [&](std::vector<std::string> extra) {
    extra.insert(extra.end(), common.begin(), common.end());
    return extra;
  };
  const std::vector<Verb> verbs{
      {"certify", "Axiom constants (m0, cm1, cm2, C) with witnesses", with({})},
      {"closeness", "sup distance between two operators over a scope", with({"scope"})},
      {"lemma22", "Empirical constants for the six interval lemma parts", with({"samples"})},
      {"quasigeo", "Quasigeodesic chains in intervals (all pairs, or x y [p])", with({"xyp"})},
      {"quasiconvexity", "Quasiconvexity constant of a subset", with({"subset"})},
      {"rank", "Largest embedded cube subalgebra", with({})},
      {"barycentre", "Barycentre classification (all triples, or one)", with({"triple", "delta"})},
  };
  std::map<std::string, Overrides> overrides;
  std::map<std::string, CLI::App*> subs;
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    add_options(sub, overrides[v.name], v.keys);
    subs[v.name] = sub;
  }

  std::string experiment_name;
  auto* exp = app.add_subcommand("experiment", "Run uniqueness, shear, barycentre or morse experiments");
  exp->add_option("name", experiment_name, "uniqueness | shear | barycentre | morse")
      ->check(CLI::IsMember({"uniqueness", "shear", "barycentre", "morse"}));
  add_options(exp, overrides["experiment"],
              with({"scope", "subset", "vertices", "radii", "sizes", "samples", "corpus", "delta", "slack", "n"}));

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Re-check every witness of a report");
  verify->add_option("--report,report", report_path, "Report JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  set_thread_count(g.threads);

  std::string command;
  try {
    if (*gen) return run_gen(g, gen_spec, gen_tree, gen_n, gen_seed);
    if (*verify) return run_verify(g, report_path);
    if (*exp) {
      command = "experiment";
      if (experiment_name.empty() && g.config_path.empty())
        throw Error(ErrorCode::kInvalidParams, "experiment needs a name");
      return run_command(g, build_config(g, command, experiment_name, overrides["experiment"]));
    }
    for (const auto& [name, sub] : subs)
      if (*sub) return run_command(g, build_config(g, name, "", overrides[name]));
  } catch (const Error& e) {
    std::cout << render_json(error_json(e));
    std::cerr << "medianlab: " << error_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    const Error err(ErrorCode::kParseError, e.what());
    std::cout << render_json(error_json(err));
    std::cerr << "medianlab: ParseError: " << e.what() << "\n";
    return exit_code_for(ErrorCode::kParseError);
  } catch (const std::exception& e) {
    std::cerr << "medianlab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
