#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lightcyl/classify.hpp"
#include "lightcyl/cone.hpp"

namespace lightcyl {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fingerprint(const std::string& text);

/// "16x16" or "16" (same count on every axis).
std::vector<int> parse_grid(const std::string& text, int n_params);

/// Comma-separated "name=lo:hi" overrides; bounds may be constant expressions ("2*pi").
/// Parameters without an override keep the declared domain.
std::vector<Interval> parse_domain_overrides(const std::string& text, const ImmersionSpec& spec);

/// Cell-centred nodes lo + (k + 1/2)(hi - lo)/count along one axis.
std::vector<double> grid_axis(Interval iv, int count);

struct NodeResult {
  std::vector<int> index;
  Eigen::VectorXd point;
  std::string status = "ok";  ///< "ok" or the kind of degeneracy
  std::string message;
  std::optional<InvariantReport> report;  ///< cylinder mode
  std::optional<ConePointReport> cone;    ///< cone mode

  bool admissible() const { return report.has_value() || cone.has_value(); }
};

struct AnalysisReport {
  std::string fingerprint;
  std::string version = kToolVersion;
  AmbientMode mode = AmbientMode::Cylinder;
  std::vector<std::string> param_names;
  std::vector<int> counts;
  std::vector<Interval> domain;
  AnalysisOptions options;
  std::vector<NodeResult> nodes;  ///< row-major in the grid index
};

/// Full invariant computation at every node. Degenerate nodes are recorded, not thrown.
/// Throws UsageError if an axis of the grid domain is unbounded. `threads` = 0 picks the
/// hardware concurrency; the result does not depend on it.
AnalysisReport analyze_spec(const ImmersionSpec& spec, const std::vector<int>& counts,
                            const std::vector<Interval>& domain, const AnalysisOptions& opt = {}, int threads = 0);

}  // namespace lightcyl
