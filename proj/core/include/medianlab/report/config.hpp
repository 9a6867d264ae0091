#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "medianlab/common.hpp"

namespace medianlab {

using Json = nlohmann::ordered_json;

/// Everything that determines a run. Echoed verbatim into every report.
///
/// Config files are `key = value` lines with `#` comments; list values are
/// comma separated. Keys are the field names below.
struct ExperimentConfig {
  std::string command;
  /// uniqueness | shear | barycentre | morse, for command "experiment".
  std::string experiment;
  std::string space;
  std::vector<std::string> operators;
  /// exhaustive | ball:C:R | sample:K
  std::string scope = "exhaustive";
  /// all | peripheral:I | geodesic:X:Y | interval:X:Y | ball:C:R | set:V,V,...
  std::string subset = "all";
  std::vector<Vertex> vertices;
  std::vector<Distance> radii;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  std::uint64_t samples = 4000;
  std::size_t corpus = 200;
  std::size_t sweep_cap = 320;
  std::size_t max_vertices = 5000;
  /// Barycentre delta; negative selects the default.
  Distance delta = -1;
  Distance slack = 2;
  bool timestamp = true;
};

/// Applies one key/value pair. Throws ParseError for unknown keys or bad
/// values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses a key-value config file body on top of `base`.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);

}  // namespace medianlab
