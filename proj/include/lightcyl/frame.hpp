#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lightcyl/difference.hpp"
#include "lightcyl/jet.hpp"
#include "lightcyl/lorentz.hpp"
#include "lightcyl/tolerances.hpp"

namespace lightcyl {

/// Source of 2-jets over a parameter domain. Usually backed by an ImmersionSpec; tests
/// substitute corrupted jets to exercise the structure-equation checks.
struct JetField {
  std::function<Jet2(const Eigen::VectorXd&)> eval;
  std::vector<Interval> domain;
  int n_params = 0;
  int ambient_dim = 0;
};

JetField jet_field(const ImmersionSpec& spec);

struct FrameOptions {
  Tolerances tol;
  DifferenceOptions diff;
};

/// Admissibility diagnostics for a point of a hypercylinder immersion.
struct CylinderCheck {
  double cone_residual = 0.0;   ///< |-phi_1^2 + phi_2^2 + ... + phi_{n+1}^2|
  bool future_flag = false;     ///< phi_1 > 0
  bool spacelike_flag = false;  ///< induced metric positive definite
  double min_metric_eigenvalue = 0.0;

  bool admissible(double eps) const { return cone_residual < eps && future_flag && spacelike_flag; }
};

CylinderCheck check_on_cylinder(const Jet2& jet, const Tolerances& tol = {});

/// Induced metric g_jk = <d_j phi, d_k phi>.
Mat induced_metric(const Jet2& jet);

/// Coefficients c with v = sum_j c_j d_j phi for a tangent ambient vector v.
Eigen::VectorXd tangent_coordinates(const Jet2& jet, const Vec& v);

/// phi with its last coordinate set to zero; light-like and normal on the cylinder.
Vec build_theta(const Jet2& jet);

struct AxialSplit {
  Vec e1;                        ///< tangential part of d/dx_{n+2}
  Eigen::VectorXd e1_coords;     ///< e1 in the coordinate basis
  double alpha = 0.0;            ///< normal part equals -alpha * theta
  double tangent_norm2 = 0.0;    ///< <e1,e1>, forced to 1 on the cylinder
  double normal_residual = 0.0;  ///< |(d/dx_{n+2})^perp + alpha theta|
};

/// Splits d/dx_{n+2} into e1 - alpha theta. Throws NotOnCylinderError if |e1| differs
/// from 1 by more than tol.cylinder.
AxialSplit build_e1_alpha(const Jet2& jet, const Vec& theta, const Tolerances& tol = {});

/// Normal-bundle coefficients of the second derivatives in the coordinate basis:
/// normal part of d2 phi/du_j du_k = theta_coeff(j,k) theta + xi_coeff(j,k) xi.
struct CoordinateNormalForm {
  Mat theta_coeff;
  Mat xi_coeff;
};

CoordinateNormalForm coordinate_normal_form(const Jet2& jet, const Vec& theta, const Vec& xi);

/// Pointwise frame {e_1..e_n; theta, xi} with the scalars alpha, beta_a and the
/// derivatives of alpha along the frame.
struct AdaptedFrame {
  int n = 0;
  Eigen::VectorXd point;
  std::vector<Vec> e;             ///< orthonormal tangent frame, e[0] = e_1
  Vec theta;
  Vec xi;
  Mat coords;                     ///< column i: e_i in the coordinate basis
  double alpha = 0.0;
  std::vector<double> beta;       ///< beta_2..beta_n, ascending
  Eigen::VectorXd alpha_gradient; ///< d alpha / du_j
  Eigen::VectorXd alpha_gradient_error;
  double e1_alpha = 0.0;
  std::vector<double> ea_alpha;   ///< e_a(alpha), a = 2..n
  double decomposition_residual = 0.0;
  bool product_type = false;      ///< alpha vanishes: d/dx_{n+2} is tangent
};

/// Adapted frame at `point`. Throws NotOnCylinderError / DegenerateSubspaceError at
/// inadmissible points and StencilError near the domain boundary.
AdaptedFrame build_adapted_frame(const JetField& field, const Eigen::VectorXd& point, const FrameOptions& opt = {});
AdaptedFrame build_adapted_frame(const ImmersionSpec& spec, std::span<const double> point, const FrameOptions& opt = {});

/// Orthonormal tangent basis starting from `first` (which must be unit and tangent).
std::vector<Vec> complete_tangent_basis(const Jet2& jet, const Vec& first, const Tolerances& tol);

/// Light-like normal xi paired with theta at a jet, independent of any tangent frame choice.
Vec xi_at(const Jet2& jet, const Vec& theta, const Tolerances& tol);

}  // namespace lightcyl
