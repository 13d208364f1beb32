#pragma once

#include <optional>

#include "lightcyl/frame.hpp"

namespace lightcyl {

/// Second fundamental form in the adapted frame, expanded as
/// h(e_i,e_j) = theta_coeff(i,j) theta + xi_coeff(i,j) xi.
struct SecondFundamentalForm {
  Mat theta_coeff;
  Mat xi_coeff;
  Vec theta;
  Vec xi;

  int n() const { return static_cast<int>(theta_coeff.rows()); }
  Vec operator()(int i, int j) const { return theta_coeff(i, j) * theta + xi_coeff(i, j) * xi; }
  /// <h(e_i,e_j), h(e_k,e_l)>
  double pair(int i, int j, int k, int l) const {
    return -(theta_coeff(i, j) * xi_coeff(k, l) + xi_coeff(i, j) * theta_coeff(k, l));
  }
  /// Matrix <h(e_i,e_j), zeta> for a normal zeta.
  Mat paired_with(const Vec& zeta) const {
    return theta_coeff * minkowski_dot(theta, zeta) + xi_coeff * minkowski_dot(xi, zeta);
  }
};

SecondFundamentalForm second_fundamental_form(const Jet2& jet, const AdaptedFrame& frame);

/// Matrix of A_zeta in the adapted frame. Throws NotNormalError if zeta has a tangent part.
Mat shape_operator(const SecondFundamentalForm& sff, const AdaptedFrame& frame, const Vec& zeta,
                   const Tolerances& tol = {});

struct MeanCurvature {
  Vec H;
  double h_theta = 0.0;
  double h_xi = 0.0;
  Mat A_H;
  double norm2 = 0.0;  ///< <H,H> = -2 h_theta h_xi
  CausalCharacter causal = CausalCharacter::SpaceLike;
  bool marginally_trapped = false;
  bool minimal = false;
};

MeanCurvature mean_curvature(const SecondFundamentalForm& sff, const AdaptedFrame& frame,
                             const Tolerances& tol = {});

/// K = <h11,h22> - <h12,h12>; surfaces only.
double gauss_curvature(const SecondFundamentalForm& sff);

/// Normal curvature from the Ricci equation on the orthonormal normal pair
/// (theta+xi)/sqrt2, (xi-theta)/sqrt2; surfaces only.
double normal_curvature(const SecondFundamentalForm& sff, const AdaptedFrame& frame);

/// h(e_i, A e_j) - h(A e_i, e_j) for a symmetric frame matrix A, returned as
/// (theta coefficient, xi coefficient).
std::pair<double, double> ricci_rhs(const SecondFundamentalForm& sff, const Mat& A, int i, int j);

/// <h(X,X),h(X,X)> for a tangent X given by frame coefficients.
double isotropy_quadratic(const SecondFundamentalForm& sff, const Eigen::VectorXd& x);

}  // namespace lightcyl
