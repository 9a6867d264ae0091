#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "medianlab/metric/graph_space.hpp"

namespace medianlab {

/// Parsed contents of a graph file.
///
///     # comment lines (kept, in order)
///     n m
///     u v [w]          (m lines, 0-based, weight defaults to 1)
///     P k v1 ... vk    (optional peripheral subsets)
///
/// `serialize_graph` writes comments first, then the header, edges in stored
/// order with the weight omitted when it is 1, then peripheral lines. Parsing
/// that output and serializing again reproduces it byte for byte.
struct GraphDocument {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> peripherals;
  std::vector<std::string> comments;
};

GraphDocument parse_graph(std::string_view text);
std::string serialize_graph(const GraphDocument& doc);

GraphDocument read_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

SpacePtr build_space(const GraphDocument& doc, std::string name = {});

GraphDocument to_document(const GraphSpace& space, std::vector<std::vector<Vertex>> peripherals = {},
                          std::vector<std::string> comments = {});

}  // namespace medianlab
