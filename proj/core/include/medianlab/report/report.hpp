#pragma once

#include <string>
#include <vector>

#include "medianlab/coarse/coarse.hpp"
#include "medianlab/constructions/catalog.hpp"
#include "medianlab/report/config.hpp"

namespace medianlab {

inline constexpr int kReportSchema = 1;

std::string_view tool_version();

struct Report {
  Json json;
  /// Curve output for experiments; empty otherwise.
  std::string csv;
};

/// Runs config.command ("certify", "closeness", "lemma22", "quasigeo",
/// "quasiconvexity", "rank", "barycentre", "experiment"). Module errors
/// propagate. When MEDIANLAB_CACHE names a directory, certificates of
/// generated spaces are memoized there.
Report run_report(const ExperimentConfig& config);

/// Two-space indented JSON with a trailing newline.
std::string render_json(const Json& j);

/// {"schema": 1, "error": {"code", "exit_code", "message", "tuple"}}.
Json error_json(const Error& error);

/// Subset specs: all | peripheral:I | geodesic:X:Y | interval:X:Y |
/// ball:C:R | set:V,V,... | segments:X1:Y1,X2:Y2,... (one geodesic per
/// product factor). Throws ParseError or InvalidParams.
VertexSet parse_subset(const std::string& spec, const SpaceBundle& bundle);

/// exhaustive | ball:C:R | sample:K (seeded by `seed`).
ClosenessScope parse_scope(const std::string& spec, std::uint64_t seed);

struct VerifyResult {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Rebuilds spaces and operators from the echoed config (or the witness's own
/// space/operators) and re-checks every witness of the report.
VerifyResult verify_report(const Json& report);

}  // namespace medianlab
