#pragma once

#include "lightcyl/frame.hpp"

namespace lightcyl {

/// Codimension-two submanifold of the light cone LC^n in E_1^{n+1} (cone-mode specs),
/// with its normal frame {gamma, eta}: gamma the position vector, eta light-like with
/// <gamma, eta> = -1.
struct ConePointReport {
  double cone_residual = 0.0;
  bool future_flag = false;
  bool spacelike_flag = false;
  Vec gamma;
  Vec eta;
  std::vector<Vec> e;  ///< orthonormal tangent frame
  Mat A_gamma;
  Mat A_eta;
};

ConePointReport analyze_cone_point(const Jet2& jet, const Tolerances& tol = {});
ConePointReport analyze_cone_point(const ImmersionSpec& spec, std::span<const double> point,
                                   const Tolerances& tol = {});

}  // namespace lightcyl
