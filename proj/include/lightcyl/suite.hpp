#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lightcyl/export.hpp"

namespace lightcyl {

/// Algebraic checks compare against tol.algebraic, differencing checks against
/// tol.classification; integration checks carry fixed tolerances and control checks
/// require the measured value to exceed a lower bound.
enum class CheckKind { Algebraic, Differencing, Integration, Control };

std::string_view to_string(CheckKind k);

struct SuiteCheck {
  std::string name;
  std::string anchor;  ///< key into theorem_map()
  CheckKind kind = CheckKind::Algebraic;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::vector<SuiteCheck> checks;
  bool all_passed() const;
};

struct SuiteOptions {
  Tolerances tol;
  DifferenceOptions diff;
  std::uint64_t seed = 0;
};

struct TheoremEntry {
  std::string anchor;
  std::string statement;
};

/// Anchor strings with the statement each check exercises (mirrored in docs/theorem_map.md).
const std::vector<TheoremEntry>& theorem_map();

SuiteResult run_verification_suite(const SuiteOptions& opt = {});

/// One line per check: "PASS|FAIL  name  measured <op> tolerance  [anchor]".
std::string suite_text(const SuiteResult& r);
Json suite_json(const SuiteResult& r, const SuiteOptions& opt);

/// Cell-centred interior samples of the declared domain, `per_axis` nodes per parameter.
std::vector<Eigen::VectorXd> interior_samples(const ImmersionSpec& spec, const std::vector<int>& per_axis);

}  // namespace lightcyl
