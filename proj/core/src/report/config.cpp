#include "medianlab/report/config.hpp"

#include <charconv>

namespace medianlab {

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto pos = value.find(',', start);
    if (pos == std::string::npos) pos = value.size();
    auto item = trim(std::string_view(value).substr(start, pos - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::kParseError, "config key '" + key + "': bad number '" + text + "'");
  return v;
}

template <class T>
std::vector<T> parse_numbers(const std::string& key, const std::string& value) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<T>(key, item));
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::kParseError, "config key '" + key + "': expected true or false");
}

}  // namespace

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "command") c.command = value;
  else if (key == "experiment") c.experiment = value;
  else if (key == "space") c.space = value;
  else if (key == "operators") c.operators = split_list(value);
  else if (key == "scope") c.scope = value;
  else if (key == "subset") c.subset = value;
  else if (key == "vertices") c.vertices = parse_numbers<Vertex>(key, value);
  else if (key == "radii") c.radii = parse_numbers<Distance>(key, value);
  else if (key == "sizes") c.sizes = parse_numbers<std::size_t>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "samples") c.samples = parse_number<std::uint64_t>(key, value);
  else if (key == "corpus") c.corpus = parse_number<std::size_t>(key, value);
  else if (key == "sweep_cap") c.sweep_cap = parse_number<std::size_t>(key, value);
  else if (key == "max_vertices") c.max_vertices = parse_number<std::size_t>(key, value);
  else if (key == "delta") c.delta = parse_number<Distance>(key, value);
  else if (key == "slack") c.slack = parse_number<Distance>(key, value);
  else if (key == "timestamp") c.timestamp = parse_bool(key, value);
  else throw Error(ErrorCode::kParseError, "unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kParseError, "config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(base, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
  }
  return base;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["experiment"] = c.experiment;
  j["space"] = c.space;
  j["operators"] = c.operators;
  j["scope"] = c.scope;
  j["subset"] = c.subset;
  j["vertices"] = c.vertices;
  j["radii"] = c.radii;
  j["sizes"] = c.sizes;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["corpus"] = c.corpus;
  j["sweep_cap"] = c.sweep_cap;
  j["max_vertices"] = c.max_vertices;
  j["delta"] = c.delta;
  j["slack"] = c.slack;
  j["timestamp"] = c.timestamp;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.experiment = j.at("experiment").get<std::string>();
    c.space = j.at("space").get<std::string>();
    c.operators = j.at("operators").get<std::vector<std::string>>();
    c.scope = j.at("scope").get<std::string>();
    c.subset = j.at("subset").get<std::string>();
    c.vertices = j.at("vertices").get<std::vector<Vertex>>();
    c.radii = j.at("radii").get<std::vector<Distance>>();
    c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.samples = j.at("samples").get<std::uint64_t>();
    c.corpus = j.at("corpus").get<std::size_t>();
    c.sweep_cap = j.at("sweep_cap").get<std::size_t>();
    c.max_vertices = j.at("max_vertices").get<std::size_t>();
    c.delta = j.at("delta").get<Distance>();
    c.slack = j.at("slack").get<Distance>();
    c.timestamp = j.at("timestamp").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("report config: ") + e.what());
  }
  return c;
}

}  // namespace medianlab
