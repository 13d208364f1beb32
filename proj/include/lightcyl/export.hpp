#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lightcyl/analysis.hpp"

namespace lightcyl {

using Json = nlohmann::ordered_json;

/// Report document: provenance, tolerance echo, grid, per-node summaries and aggregate
/// verdicts (all / none / mixed) derived from the nodes.
Json report_json(const AnalysisReport& report);

/// Two-space indented JSON followed by a newline.
std::string report_json_text(const AnalysisReport& report);

/// Fixed CSV header for a cylinder-mode report with the given parameter names.
std::vector<std::string> csv_columns(const std::vector<std::string>& param_names);

/// One row per node; empty cells where a value does not apply.
std::string report_csv(const AnalysisReport& report);

struct Mesh {
  std::string obj;      ///< "v x2 x3 x4" lines, then "f a b c d" quads (1-based)
  std::string sidecar;  ///< x1 of each vertex, one per line, same order
  std::size_t vertices = 0;
  std::size_t faces = 0;
};

/// Vertex grid including the domain corners. Surfaces only (DimensionError otherwise).
Mesh export_mesh(const ImmersionSpec& spec, const std::vector<int>& counts, const std::vector<Interval>& domain);

}  // namespace lightcyl
