#pragma once

namespace lightcyl {

/// Numerical thresholds used across the library. All are relative unless noted.
struct Tolerances {
  double causal = 1e-9;     ///< zero test for <v,v> in causal classification
  double symmetry = 1e-9;   ///< accepted asymmetry of shape-operator matrices
  double gram = 1e-9;       ///< smallest accepted pivot of a space-like Gram matrix
  double cylinder = 1e-6;   ///< cone residual and |(d/dx_{n+2})^T| - 1 for admissibility
  double algebraic = 1e-8;  ///< pointwise algebraic identities
  double classification = 1e-5;  ///< predicates that involve outer differencing
};

/// Outer finite differencing: step h_i = step_scale * (1 + |u_i|), one Richardson level.
struct DifferenceOptions {
  double step_scale = 1e-4;
};

}  // namespace lightcyl
