#include "lightcyl/classify.hpp"

#include <algorithm>
#include <cmath>

namespace lightcyl {

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

double umbilic_defect(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  return (A - (A.trace() / n) * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

bool Flags::inconsistent() const {
  return !pseudo_umbilical.consistent() || !flat_normal_bundle.consistent() || !isotropic.consistent() ||
         (flat && !flat->consistent()) || (surface_equivalences_agree && !*surface_equivalences_agree);
}

double pseudo_umbilical_conditions(const AdaptedFrame& f) {
  if (f.n == 2) throw DimensionError("pseudo-umbilical conditions for n > 2 are singular at n = 2");
  if (f.n < 2) throw DimensionError("pseudo_umbilical_conditions: n must exceed 2");
  const int n = f.n;
  double mean = 0.0;
  for (double b : f.beta) mean += b;
  mean /= (n - 1);
  double worst = 0.0;
  for (double b : f.beta) worst = std::max(worst, std::abs(b - mean));
  worst = std::max(worst, std::abs(f.e1_alpha + f.alpha * f.alpha + (2.0 * n - 2.0) / (n - 2.0) * mean));
  for (double d : f.ea_alpha) worst = std::max(worst, std::abs(d));
  return worst;
}

double surface_pseudo_umbilical_conditions(const AdaptedFrame& f) {
  if (f.n != 2) throw DimensionError("surface pseudo-umbilical conditions require n = 2");
  return std::max({std::abs(f.e1_alpha + f.alpha * f.alpha), std::abs(f.ea_alpha[0]), std::abs(f.beta[0])});
}

std::vector<Eigen::VectorXd> isotropy_directions(int n, int count, std::uint64_t seed) {
  if (n < 1 || n > static_cast<int>(std::size(kPrimes))) throw DimensionError("isotropy_directions: unsupported n");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<size_t>(count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) out.push_back(Eigen::VectorXd::Ones(1));
    return out;
  }
  for (std::uint64_t i = seed + 1; static_cast<int>(out.size()) < count; ++i) {
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x(d) = 2.0 * radical_inverse(i, kPrimes[d]) - 1.0;
    const double r = x.norm();
    if (r > 1.0 || r < 0.1) continue;
    out.push_back(x / r);
  }
  return out;
}

Flags classify(const AdaptedFrame& frame, const SecondFundamentalForm& sff, const MeanCurvature& mean,
               const std::vector<Eigen::VectorXd>& directions, const Tolerances& tol) {
  const int n = frame.n;
  const double eps = tol.classification;
  Flags fl;
  fl.marginally_trapped = mean.marginally_trapped;
  fl.minimal = mean.minimal;
  fl.a_h_norm = mean.A_H.cwiseAbs().maxCoeff();
  fl.a_h_zero = fl.a_h_norm < eps;
  fl.alpha_zero = std::abs(frame.alpha) < tol.algebraic;

  const Mat A_theta = sff.paired_with(frame.theta);
  const Mat A_xi = sff.paired_with(frame.xi);
  fl.totally_umbilical_measure = std::max(umbilic_defect(A_theta), umbilic_defect(A_xi));
  fl.totally_umbilical = fl.totally_umbilical_measure < eps;

  auto& pu = fl.pseudo_umbilical;
  pu.measure_a = umbilic_defect(mean.A_H);
  pu.measure_b = n == 2 ? surface_pseudo_umbilical_conditions(frame) : pseudo_umbilical_conditions(frame);
  pu.route_a = pu.measure_a < eps;
  pu.route_b = pu.measure_b < eps;
  pu.value = pu.route_a;

  auto& fnb = fl.flat_normal_bundle;
  fnb.measure_a = 0.0;
  for (double d : frame.ea_alpha) fnb.measure_a = std::max(fnb.measure_a, std::abs(d));
  fnb.measure_b = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto [t, x] = ricci_rhs(sff, A_theta, i, j);
      fnb.measure_b = std::max({fnb.measure_b, std::abs(t), std::abs(x)});
    }
  fnb.route_a = fnb.measure_a < eps;
  fnb.route_b = fnb.measure_b < eps;
  fnb.value = fnb.route_a;

  auto& iso = fl.isotropic;
  if (n == 2) {
    iso.measure_a = std::abs(frame.beta[0]);
  } else {
    iso.measure_a = std::max(std::abs(mean.norm2), fl.a_h_norm);
    if (mean.minimal) iso.measure_a = std::max(iso.measure_a, 1.0);
  }
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (const auto& x : directions) {
    const double q = isotropy_quadratic(sff, x);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    sum += q;
  }
  fl.isotropy_spread = directions.empty() ? 0.0 : hi - lo;
  fl.isotropy_lambda = directions.empty() ? 0.0 : sum / static_cast<double>(directions.size());
  iso.measure_b = fl.isotropy_spread;
  iso.route_a = iso.measure_a < eps;
  iso.route_b = iso.measure_b < eps;
  iso.value = iso.route_a;

  if (n == 2) {
    DualFlag flat;
    flat.measure_a = std::abs(gauss_curvature(sff));
    flat.measure_b = std::abs(frame.e1_alpha + frame.alpha * frame.alpha);
    flat.route_a = flat.measure_a < eps;
    flat.route_b = flat.measure_b < eps;
    flat.value = flat.route_a;
    fl.flat = flat;
    const bool p1 = pu.route_a;
    const bool p2 = pu.route_b;
    const bool p3 = flat.route_a && fl.marginally_trapped && fnb.route_a;
    const bool p4 = fl.a_h_zero;
    fl.surface_equivalences_agree = (p1 == p2) && (p2 == p3) && (p3 == p4);
  }
  return fl;
}

InvariantReport analyze_point(const JetField& field, const Eigen::VectorXd& point, const AnalysisOptions& opt) {
  const FrameOptions fo{opt.tol, opt.diff};
  InvariantReport r;
  r.point = point;
  r.frame = build_adapted_frame(field, point, fo);
  const Jet2 jet = field.eval(point);
  r.sff = second_fundamental_form(jet, r.frame);
  r.A_theta = r.sff.paired_with(r.frame.theta);
  r.A_xi = r.sff.paired_with(r.frame.xi);
  r.mean = mean_curvature(r.sff, r.frame, opt.tol);
  if (r.frame.n == 2) {
    r.K = gauss_curvature(r.sff);
    r.K_perp = normal_curvature(r.sff, r.frame);
  }
  if (opt.residuals) r.residuals = structure_residuals(field, r.frame, fo);
  r.flags = classify(r.frame, r.sff, r.mean, isotropy_directions(r.frame.n, opt.directions, opt.seed), opt.tol);
  return r;
}

InvariantReport analyze_point(const ImmersionSpec& spec, std::span<const double> point, const AnalysisOptions& opt) {
  if (spec.mode != AmbientMode::Cylinder)
    throw DimensionError("analyze_point: immersion is not into the hypercylinder");
  if (static_cast<int>(point.size()) != spec.n_params) throw DimensionError("analyze_point: wrong point length");
  return analyze_point(jet_field(spec), Eigen::Map<const Eigen::VectorXd>(point.data(), point.size()), opt);
}

}  // namespace lightcyl
