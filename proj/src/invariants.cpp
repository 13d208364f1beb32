#include "lightcyl/invariants.hpp"

#include <cmath>
#include <sstream>

namespace lightcyl {

SecondFundamentalForm second_fundamental_form(const Jet2& jet, const AdaptedFrame& frame) {
  const CoordinateNormalForm cnf = coordinate_normal_form(jet, frame.theta, frame.xi);
  const Mat& C = frame.coords;
  SecondFundamentalForm s;
  s.theta_coeff = C.transpose() * cnf.theta_coeff * C;
  s.xi_coeff = C.transpose() * cnf.xi_coeff * C;
  s.theta = frame.theta;
  s.xi = frame.xi;
  return s;
}

Mat shape_operator(const SecondFundamentalForm& sff, const AdaptedFrame& frame, const Vec& zeta,
                   const Tolerances& tol) {
  if (zeta.size() != sff.theta.size()) throw DimensionError("shape_operator: zeta has wrong length");
  const double scale = std::max(1.0, zeta.norm());
  for (size_t i = 0; i < frame.e.size(); ++i) {
    const double p = minkowski_dot(zeta, frame.e[i]);
    if (std::abs(p) > tol.algebraic * scale) {
      std::ostringstream os;
      os << "shape_operator: zeta is not normal (<zeta,e_" << i + 1 << "> = " << p << ")";
      throw NotNormalError(os.str());
    }
  }
  return sff.paired_with(zeta);
}

MeanCurvature mean_curvature(const SecondFundamentalForm& sff, const AdaptedFrame& frame, const Tolerances& tol) {
  const int n = sff.n();
  MeanCurvature m;
  m.h_theta = sff.theta_coeff.trace() / n;
  m.h_xi = sff.xi_coeff.trace() / n;
  m.H = m.h_theta * frame.theta + m.h_xi * frame.xi;
  m.A_H = sff.paired_with(m.H);
  m.norm2 = -2.0 * m.h_theta * m.h_xi;
  m.causal = causal_character(m.H, tol.causal);
  const double size = std::hypot(m.h_theta, m.h_xi);
  m.minimal = size < tol.classification;
  m.marginally_trapped = !m.minimal && std::abs(m.norm2) < tol.classification;
  return m;
}

double gauss_curvature(const SecondFundamentalForm& sff) {
  if (sff.n() != 2) throw DimensionError("gauss_curvature: defined for surfaces (n = 2) only");
  return sff.pair(0, 0, 1, 1) - sff.pair(0, 1, 0, 1);
}

std::pair<double, double> ricci_rhs(const SecondFundamentalForm& sff, const Mat& A, int i, int j) {
  double t = 0.0, x = 0.0;
  for (int c = 0; c < sff.n(); ++c) {
    t += A(c, j) * sff.theta_coeff(i, c) - A(c, i) * sff.theta_coeff(c, j);
    x += A(c, j) * sff.xi_coeff(i, c) - A(c, i) * sff.xi_coeff(c, j);
  }
  return {t, x};
}

double normal_curvature(const SecondFundamentalForm& sff, const AdaptedFrame& frame) {
  if (sff.n() != 2) throw DimensionError("normal_curvature: defined for surfaces (n = 2) only");
  const Vec z1 = (frame.theta + frame.xi) / std::sqrt(2.0);
  const Vec z2 = (frame.xi - frame.theta) / std::sqrt(2.0);
  const auto [t, x] = ricci_rhs(sff, sff.paired_with(z1), 0, 1);
  const Vec r = t * frame.theta + x * frame.xi;
  const double denom = minkowski_norm2(z1) * minkowski_norm2(z2) - std::pow(minkowski_dot(z1, z2), 2);
  return minkowski_dot(r, z2) / denom;
}

double isotropy_quadratic(const SecondFundamentalForm& sff, const Eigen::VectorXd& x) {
  const double t = x.dot(sff.theta_coeff * x);
  const double s = x.dot(sff.xi_coeff * x);
  return -2.0 * t * s;
}

}  // namespace lightcyl
