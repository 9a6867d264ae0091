#include "medianlab/metric/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace medianlab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                    std::string(token) + "'");
  return v;
}

}  // namespace

GraphDocument parse_graph(std::string_view text) {
  GraphDocument doc;
  bool have_header = false;
  std::size_t expected_edges = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      if (pos > text.size()) break;
      continue;
    }
    if (line[first] == '#') {
      doc.comments.emplace_back(line.substr(first));
      continue;
    }
    const auto tokens = split_ws(line);
    if (!have_header) {
      if (tokens.size() != 2)
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": header must be 'n m'");
      doc.n = parse_uint(tokens[0], line_no);
      expected_edges = parse_uint(tokens[1], line_no);
      have_header = true;
      continue;
    }
    if (tokens[0] == "P") {
      if (doc.edges.size() != expected_edges)
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": peripheral line before all edges");
      if (tokens.size() < 2) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": bad P line");
      const auto k = parse_uint(tokens[1], line_no);
      if (tokens.size() != k + 2)
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": P line declares " + std::to_string(k) + " vertices");
      std::vector<Vertex> members;
      for (std::size_t i = 0; i < k; ++i) {
        const auto v = parse_uint(tokens[i + 2], line_no);
        if (v >= doc.n)
          throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": peripheral vertex out of range");
        members.push_back(static_cast<Vertex>(v));
      }
      doc.peripherals.push_back(std::move(members));
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": edge must be 'u v [w]'");
    if (doc.edges.size() == expected_edges)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": more edges than declared");
    Edge e;
    e.u = static_cast<Vertex>(parse_uint(tokens[0], line_no));
    e.v = static_cast<Vertex>(parse_uint(tokens[1], line_no));
    if (tokens.size() == 3) e.weight = static_cast<std::uint32_t>(parse_uint(tokens[2], line_no));
    doc.edges.push_back(e);
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "missing 'n m' header");
  if (doc.edges.size() != expected_edges)
    throw Error(ErrorCode::kParseError, "header declares " + std::to_string(expected_edges) + " edges, found " +
                                            std::to_string(doc.edges.size()));
  return doc;
}

std::string serialize_graph(const GraphDocument& doc) {
  std::ostringstream out;
  for (const auto& c : doc.comments) out << c << '\n';
  out << doc.n << ' ' << doc.edges.size() << '\n';
  for (const auto& e : doc.edges) {
    out << e.u << ' ' << e.v;
    if (e.weight != 1) out << ' ' << e.weight;
    out << '\n';
  }
  for (const auto& p : doc.peripherals) {
    out << "P " << p.size();
    for (auto v : p) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << text;
}

GraphDocument read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

SpacePtr build_space(const GraphDocument& doc, std::string name) {
  return build_space(doc.n, doc.edges, std::move(name));
}

GraphDocument to_document(const GraphSpace& space, std::vector<std::vector<Vertex>> peripherals,
                          std::vector<std::string> comments) {
  GraphDocument doc;
  doc.n = space.size();
  doc.edges = space.edges();
  doc.peripherals = std::move(peripherals);
  doc.comments = std::move(comments);
  return doc;
}

}  // namespace medianlab
