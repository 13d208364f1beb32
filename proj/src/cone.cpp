#include "lightcyl/cone.hpp"

#include <cmath>

namespace lightcyl {

ConePointReport analyze_cone_point(const Jet2& jet, const Tolerances& tol) {
  const int n = jet.n_params();
  ConePointReport r;
  r.gamma = jet.value;
  r.cone_residual = std::abs(minkowski_norm2(r.gamma));
  r.future_flag = r.gamma(0) > 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(induced_metric(jet), Eigen::EigenvaluesOnly);
  r.spacelike_flag = es.eigenvalues()(0) > 0.0;
  if (r.cone_residual > tol.cylinder * (1.0 + r.gamma.squaredNorm()) || !r.future_flag)
    throw NotOnCylinderError("point is not on the future light cone");
  if (!r.spacelike_flag) throw DegenerateSubspaceError("induced metric is not positive definite");

  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) cols.push_back(jet.first.col(j));
  r.e = orthonormalize_spacelike(cols, tol.gram);
  r.eta = complete_pseudo_orthonormal(r.gamma, r.e, tol.causal);

  Mat C(n, n);
  for (int i = 0; i < n; ++i) C.col(i) = tangent_coordinates(jet, r.e[static_cast<size_t>(i)]);
  Mat pg(n, n), pe(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      pg(j, k) = minkowski_dot(jet.d2(j, k), r.gamma);
      pe(j, k) = minkowski_dot(jet.d2(j, k), r.eta);
    }
  r.A_gamma = C.transpose() * pg * C;
  r.A_eta = C.transpose() * pe * C;
  return r;
}

ConePointReport analyze_cone_point(const ImmersionSpec& spec, std::span<const double> point, const Tolerances& tol) {
  if (spec.mode != AmbientMode::Cone) throw DimensionError("analyze_cone_point: spec is not a cone-mode immersion");
  return analyze_cone_point(eval_jet2(spec, point), tol);
}

}  // namespace lightcyl
