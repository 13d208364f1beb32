#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightcyl/invariants.hpp"

namespace lightcyl {

/// Residuals of the structure equations and frame identities at one point. Each entry is
/// the largest absolute deviation over all frame indices.
struct StructureResiduals {
  double gauss = 0.0;       ///< intrinsic curvature (metric only) vs second fundamental form
  double codazzi = 0.0;     ///< (nabla_X h)(Y,Z) - (nabla_Y h)(X,Z)
  double ricci = 0.0;       ///< normal curvature from the normal connection vs shape operators
  double frame_a = 0.0;     ///< pairing table of {e_i, theta, xi} and d/dx_{n+2} = e1 - alpha theta
  double frame_b = 0.0;     ///< nabla_{e1} e1 = 0, <nabla_{e_a} e1, e_b> = alpha delta_ab
  double frame_c = 0.0;     ///< A_theta = diag(0,-1,...,-1)
  double frame_d = 0.0;     ///< normal connection of theta: alpha along e1, zero along e_a
  double frame_e = 0.0;     ///< h in terms of alpha, e_i(alpha), beta_a
  double weingarten = 0.0;  ///< <A_zeta X,Y> from D zeta vs <h(X,Y),zeta>, zeta in {theta, xi}
  double lightlike_h11 = 0.0;  ///< |<h(e1,e1),h(e1,e1)>|
  std::optional<double> k_closed;     ///< surfaces: K from h
  std::optional<double> k_intrinsic;  ///< surfaces: K from the metric alone

  std::vector<std::pair<std::string, double>> entries() const;
};

/// Requires two difference steps of room around `point` in every direction.
StructureResiduals structure_residuals(const JetField& field, const Eigen::VectorXd& point,
                                       const FrameOptions& opt = {});
StructureResiduals structure_residuals(const JetField& field, const AdaptedFrame& frame,
                                       const FrameOptions& opt = {});
StructureResiduals structure_residuals(const ImmersionSpec& spec, std::span<const double> point,
                                       const FrameOptions& opt = {});

/// Christoffel symbols Gamma^m_ij (index m*n*n + i*n + j) from finite differences of the
/// induced metric; uses first derivatives of phi only.
Eigen::VectorXd metric_christoffel(const JetField& field, const Eigen::VectorXd& point, const DifferenceOptions& diff);

/// Christoffel symbols from the exact 2-jet.
Eigen::VectorXd jet_christoffel(const Jet2& jet);

}  // namespace lightcyl
