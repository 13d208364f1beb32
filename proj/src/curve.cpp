#include "lightcyl/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lightcyl {

namespace {

using State = Eigen::Matrix<double, 9, 1>;

State pack(const Vec& g, const Vec& gp, const Vec& e) {
  State y;
  y << g, gp, e;
  return y;
}

State rhs(const std::function<double(double)>& kappa, double t, const State& y) {
  const double k = kappa(t);
  State d;
  d.segment<3>(0) = y.segment<3>(3);
  d.segment<3>(3) = k * y.segment<3>(0) + y.segment<3>(6);
  d.segment<3>(6) = k * y.segment<3>(3);
  return d;
}

State rk4(const std::function<double(double)>& kappa, double t, const State& y, double h) {
  const State k1 = rhs(kappa, t, y);
  const State k2 = rhs(kappa, t + 0.5 * h, y + 0.5 * h * k1);
  const State k3 = rhs(kappa, t + 0.5 * h, y + 0.5 * h * k2);
  const State k4 = rhs(kappa, t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double drift(const State& y) {
  return curve_constraints(y.segment<3>(0), y.segment<3>(3), y.segment<3>(6)).max();
}

State project(const State& y) {
  Vec g = y.segment<3>(0);
  Vec gp = y.segment<3>(3);
  const Vec eta = y.segment<3>(6);
  g(0) = g.tail(2).norm();
  gp += minkowski_dot(gp, g) * eta;
  gp /= std::sqrt(minkowski_norm2(gp));
  const Vec e = complete_pseudo_orthonormal(g, {gp});
  return pack(g, gp, e);
}

constexpr const char* kConstraintNames[5] = {"<gamma,gamma> = 0", "<gamma',gamma'> = 1", "<gamma,eta> = -1",
                                             "<eta,eta> = 0", "<gamma',eta> = 0"};

}  // namespace

double CurveConstraints::max() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<std::string> CurveConstraints::violated(double eps) const {
  std::vector<std::string> out;
  for (int i = 0; i < 5; ++i)
    if (!(std::abs(values[i]) <= eps)) out.emplace_back(kConstraintNames[i]);
  return out;
}

CurveConstraints curve_constraints(const Vec& g, const Vec& gp, const Vec& eta) {
  CurveConstraints c;
  c.values[0] = minkowski_norm2(g);
  c.values[1] = minkowski_norm2(gp) - 1.0;
  c.values[2] = minkowski_dot(g, eta) + 1.0;
  c.values[3] = minkowski_norm2(eta);
  c.values[4] = minkowski_dot(gp, eta);
  return c;
}

CurveOnCone integrate_lc2_curve(const std::function<double(double)>& kappa_fn, const CurveInitial& init, double t0,
                                double t1, double tol, int samples) {
  if (init.gamma.size() != 3 || init.gamma_prime.size() != 3 || init.eta.size() != 3)
    throw DimensionError("integrate_lc2_curve: initial vectors must lie in E_1^3");
  if (samples < 2 || !(t1 > t0)) throw PreconditionError("integrate_lc2_curve: need t1 > t0 and at least two samples");
  const auto bad = curve_constraints(init.gamma, init.gamma_prime, init.eta).violated(1e-10);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "initial data violates:";
    for (const auto& b : bad) os << " " << b << ";";
    throw PreconditionError(os.str());
  }

  CurveOnCone out;
  out.kappa_fn = kappa_fn;
  State y = pack(init.gamma, init.gamma_prime, init.eta);
  const double span = t1 - t0;
  double h = std::min(0.05, span / (samples - 1));
  double t = t0;
  out.samples.push_back({t, init.gamma, init.gamma_prime, init.eta});
  for (int i = 1; i < samples; ++i) {
    const double target = (i == samples - 1) ? t1 : t0 + span * i / (samples - 1);
    while (t < target) {
      const double step = std::min(h, target - t);
      const State full = rk4(kappa_fn, t, y, step);
      const State half = rk4(kappa_fn, t + 0.5 * step, rk4(kappa_fn, t, y, 0.5 * step), 0.5 * step);
      const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
      if (err <= tol || step < 1e-12) {
        t += step;
        y = half + (half - full) / 15.0;
        const double d = drift(y);
        out.max_constraint_drift = std::max(out.max_constraint_drift, d);
        if (d > 10.0 * tol) {
          y = project(y);
          ++out.projections;
        }
        if (step == h) h *= std::clamp(0.9 * std::pow(tol / std::max(err, 1e-300), 0.2), 0.2, 2.0);
      } else {
        h = step * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
      }
    }
    t = target;
    out.samples.push_back({t, y.segment<3>(0), y.segment<3>(3), y.segment<3>(6)});
  }
  return out;
}

CurveKappa curve_kappa(const Vec& g, const Vec& gp, const Vec& gpp, double eps) {
  if (g.size() != 3 || gp.size() != 3 || gpp.size() != 3) throw DimensionError("curve_kappa: vectors must lie in E_1^3");
  const double c0 = minkowski_norm2(g);
  const double c1 = minkowski_norm2(gp) - 1.0;
  if (std::abs(c0) > eps * (1.0 + g.squaredNorm()) || std::abs(c1) > eps) {
    std::ostringstream os;
    os << "curve_kappa: curve must be null-position and arc-length (<g,g> = " << c0 << ", <g',g'> - 1 = " << c1 << ")";
    throw PreconditionError(os.str());
  }
  CurveKappa r;
  r.eta = complete_pseudo_orthonormal(g, {gp});
  r.kappa = -minkowski_dot(gpp, r.eta);
  return r;
}

std::vector<std::pair<double, double>> recompute_kappa(const CurveOnCone& curve) {
  std::vector<std::pair<double, double>> out;
  const auto& s = curve.samples;
  if (s.size() < 5) return out;
  const double dt = s[1].t - s[0].t;
  for (size_t i = 2; i + 2 < s.size(); ++i) {
    const Vec d = (s[i - 2].eta - 8.0 * s[i - 1].eta + 8.0 * s[i + 1].eta - s[i + 2].eta) / (12.0 * dt);
    out.emplace_back(s[i].t, minkowski_dot(s[i].gamma_prime, d));
  }
  return out;
}

}  // namespace lightcyl
