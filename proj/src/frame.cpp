#include "lightcyl/frame.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lightcyl {

JetField jet_field(const ImmersionSpec& spec) {
  JetField f;
  f.eval = [&spec](const Eigen::VectorXd& u) { return eval_jet2(spec, std::span<const double>(u.data(), u.size())); };
  f.domain = spec.param_domain;
  f.n_params = spec.n_params;
  f.ambient_dim = spec.ambient_dim;
  return f;
}

Mat induced_metric(const Jet2& jet) { return minkowski_gram(jet.first); }

Eigen::VectorXd tangent_coordinates(const Jet2& jet, const Vec& v) {
  Vec eta_v = v;
  eta_v(0) = -eta_v(0);
  return induced_metric(jet).ldlt().solve(jet.first.transpose() * eta_v);
}

CylinderCheck check_on_cylinder(const Jet2& jet, const Tolerances&) {
  const int k = jet.ambient_dim();
  if (k < 3) throw DimensionError("check_on_cylinder: ambient dimension must be n+2 >= 3");
  CylinderCheck c;
  const Vec head = jet.value.head(k - 1);
  c.cone_residual = std::abs(minkowski_norm2(head));
  c.future_flag = jet.value(0) > 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(induced_metric(jet), Eigen::EigenvaluesOnly);
  c.min_metric_eigenvalue = es.eigenvalues().size() ? es.eigenvalues()(0) : 0.0;
  c.spacelike_flag = c.min_metric_eigenvalue > 0.0;
  return c;
}

Vec build_theta(const Jet2& jet) {
  Vec theta = jet.value;
  theta(theta.size() - 1) = 0.0;
  return theta;
}

AxialSplit build_e1_alpha(const Jet2& jet, const Vec& theta, const Tolerances& tol) {
  const int k = jet.ambient_dim();
  const Vec axis = Vec::Unit(k, k - 1);
  AxialSplit s;
  s.e1_coords = tangent_coordinates(jet, axis);
  s.e1 = jet.first * s.e1_coords;
  s.tangent_norm2 = minkowski_norm2(s.e1);
  if (!(std::abs(s.tangent_norm2 - 1.0) <= tol.cylinder)) {
    std::ostringstream os;
    os << "tangential part of d/dx_" << k << " has squared norm " << s.tangent_norm2
       << " (expected 1 on the hypercylinder)";
    throw NotOnCylinderError(os.str());
  }
  const Vec normal = axis - s.e1;
  const double cut = 0.1 * theta.cwiseAbs().maxCoeff();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < k; ++i) {
    if (std::abs(theta(i)) > cut) {
      num += theta(i) * normal(i);
      den += theta(i) * theta(i);
    }
  }
  if (den == 0.0) throw NotOnCylinderError("theta vanishes; point is not on the hypercylinder");
  s.alpha = -num / den;
  s.normal_residual = (normal + s.alpha * theta).norm();
  return s;
}

CoordinateNormalForm coordinate_normal_form(const Jet2& jet, const Vec& theta, const Vec& xi) {
  const int n = jet.n_params();
  CoordinateNormalForm f{Mat(n, n), Mat(n, n)};
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const Vec d = jet.d2(j, k);
      f.theta_coeff(j, k) = f.theta_coeff(k, j) = -minkowski_dot(d, xi);
      f.xi_coeff(j, k) = f.xi_coeff(k, j) = -minkowski_dot(d, theta);
    }
  }
  return f;
}

std::vector<Vec> complete_tangent_basis(const Jet2& jet, const Vec& first, const Tolerances& tol) {
  const int n = jet.n_params();
  const Mat g = induced_metric(jet);
  int drop = 0;
  double best = -1.0;
  for (int j = 0; j < n; ++j) {
    const double c = std::abs(minkowski_dot(first, jet.first.col(j))) / std::sqrt(g(j, j));
    if (c > best) {
      best = c;
      drop = j;
    }
  }
  std::vector<Vec> cand{first};
  for (int j = 0; j < n; ++j)
    if (j != drop) cand.push_back(jet.first.col(j));
  return orthonormalize_spacelike(cand, tol.gram);
}

Vec xi_at(const Jet2& jet, const Vec& theta, const Tolerances& tol) {
  std::vector<Vec> cols;
  for (int j = 0; j < jet.n_params(); ++j) cols.push_back(jet.first.col(j));
  return complete_pseudo_orthonormal(theta, orthonormalize_spacelike(cols, tol.gram), tol.causal);
}

namespace {

Jet2 admissible_jet(const JetField& field, const Eigen::VectorXd& u, const Tolerances& tol) {
  Jet2 jet = field.eval(u);
  const CylinderCheck c = check_on_cylinder(jet, tol);
  const double scale = 1.0 + jet.value.head(jet.ambient_dim() - 1).squaredNorm();
  if (c.cone_residual > tol.cylinder * scale || !c.future_flag) {
    std::ostringstream os;
    os << "point is not on the future hypercylinder (cone residual " << c.cone_residual << ", phi_1 = "
       << jet.value(0) << ")";
    throw NotOnCylinderError(os.str());
  }
  if (!c.spacelike_flag) throw DegenerateSubspaceError("induced metric is not positive definite");
  return jet;
}

}  // namespace

AdaptedFrame build_adapted_frame(const JetField& field, const Eigen::VectorXd& point, const FrameOptions& opt) {
  const int n = field.n_params;
  if (n < 2) throw DimensionError("build_adapted_frame: requires n >= 2");
  if (point.size() != n) throw DimensionError("build_adapted_frame: point has wrong length");
  if (field.ambient_dim != n + 2) throw DimensionError("build_adapted_frame: ambient dimension must be n+2");

  const Jet2 jet = admissible_jet(field, point, opt.tol);
  AdaptedFrame f;
  f.n = n;
  f.point = point;
  f.theta = build_theta(jet);
  const AxialSplit split = build_e1_alpha(jet, f.theta, opt.tol);
  f.alpha = split.alpha;
  f.decomposition_residual = split.normal_residual;

  const std::vector<Vec> basis = complete_tangent_basis(jet, split.e1, opt.tol);
  f.xi = complete_pseudo_orthonormal(f.theta, basis, opt.tol.causal);
  if (minkowski_dot(f.xi, time_axis(f.xi.size())) >= 0.0)
    throw DegenerateNormalError("xi is not future-pointing");

  Mat fc(n, n);
  for (int i = 0; i < n; ++i) fc.col(i) = tangent_coordinates(jet, basis[static_cast<size_t>(i)]);

  f.coords = Mat(n, n);
  f.coords.col(0) = fc.col(0);
  if (n == 2) {
    f.coords.col(1) = fc.col(1);
    if (f.coords.determinant() < 0.0) f.coords.col(1) *= -1.0;
    const CoordinateNormalForm cnf = coordinate_normal_form(jet, f.theta, f.xi);
    const Vec c2 = f.coords.col(1);
    f.beta = {c2.dot(cnf.theta_coeff * c2) * -1.0};
  } else if (n > 2) {
    const CoordinateNormalForm cnf = coordinate_normal_form(jet, f.theta, f.xi);
    const Mat perp = fc.rightCols(n - 1);
    const Mat L = -(perp.transpose() * cnf.theta_coeff * perp);
    const Mat Ls = 0.5 * (L + L.transpose());
    const auto pairs = symmetric_eigen(Ls, opt.tol.symmetry);
    for (int a = 0; a < n - 1; ++a) {
      f.coords.col(a + 1) = perp * pairs[static_cast<size_t>(a)].vector;
      f.beta.push_back(pairs[static_cast<size_t>(a)].value);
    }
  }
  for (int i = 0; i < n; ++i) f.e.push_back(jet.first * f.coords.col(i));
  f.product_type = std::abs(f.alpha) < opt.tol.algebraic;

  const Tolerances tol = opt.tol;
  const ScalarField alpha_field = [&field, tol](const Eigen::VectorXd& u) {
    const Jet2 j = field.eval(u);
    return build_e1_alpha(j, build_theta(j), tol).alpha;
  };
  const ScalarGradient grad = eval_scalar_field_jet(alpha_field, point, field.domain, opt.diff);
  f.alpha_gradient = grad.gradient;
  f.alpha_gradient_error = grad.error;
  f.e1_alpha = f.coords.col(0).dot(grad.gradient);
  for (int a = 1; a < n; ++a) f.ea_alpha.push_back(f.coords.col(a).dot(grad.gradient));
  return f;
}

AdaptedFrame build_adapted_frame(const ImmersionSpec& spec, std::span<const double> point, const FrameOptions& opt) {
  if (static_cast<int>(point.size()) != spec.n_params)
    throw DimensionError("build_adapted_frame: point has wrong length");
  if (spec.mode != AmbientMode::Cylinder)
    throw DimensionError("build_adapted_frame: immersion is not into the hypercylinder (ambient must be n+2)");
  return build_adapted_frame(jet_field(spec), Eigen::Map<const Eigen::VectorXd>(point.data(), point.size()), opt);
}

}  // namespace lightcyl
