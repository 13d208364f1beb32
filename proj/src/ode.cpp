#include "lightcyl/ode.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lightcyl/errors.hpp"

namespace lightcyl {

double alpha_hat_second(int n, int c, double tau, double a, double da) {
  return (n - 1) * (c + tau * tau * da * da) / ((n - 2) * tau * tau * a);
}

double alpha_hat_residual(int n, int c, double tau, double a, double da, double dda) {
  return (n - 2) * tau * tau * a * dda - (n - 1) * (c + tau * tau * da * da);
}

double alpha_hat_beta(int c, double tau, double a, double da) {
  return -(c + tau * tau * da * da) / (2.0 * tau * tau * a * a);
}

Spline OdeSolution::interpolant() const {
  std::vector<SplineKnot> knots;
  knots.reserve(grid.size());
  for (const auto& g : grid) knots.push_back({g.s, g.a, g.da, g.dda});
  return Spline(std::move(knots));
}

double OdeSolution::max_midpoint_residual() const {
  const Spline sp = interpolant();
  double worst = 0.0;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const auto v = sp.evaluate(0.5 * (grid[i].s + grid[i + 1].s));
    worst = std::max(worst, std::abs(alpha_hat_residual(n, c, tau, v[0], v[1], v[2])));
  }
  return worst;
}

OdeSolution solve_alpha_hat_ode(int n, int c, double tau, std::pair<double, double> ivp,
                                std::pair<double, double> s_range, double tol, double max_step, double a_min) {
  if (n <= 2) throw DimensionError("solve_alpha_hat_ode: requires n > 2 (the equation degenerates at n = 2)");
  if (!(ivp.first > 0.0)) throw PreconditionError("solve_alpha_hat_ode: initial value must be positive");
  if (!(tau > 0.0)) throw PreconditionError("solve_alpha_hat_ode: tau must be positive");
  if (c < -1 || c > 1) throw PreconditionError("solve_alpha_hat_ode: c must be -1, 0 or 1");
  if (!(s_range.second > s_range.first)) throw PreconditionError("solve_alpha_hat_ode: empty range");

  using Y = Eigen::Vector2d;
  auto f = [&](const Y& y) { return Y(y(1), alpha_hat_second(n, c, tau, y(0), y(1))); };
  auto rk4 = [&](const Y& y, double h) {
    const Y k1 = f(y);
    const Y k2 = f(y + 0.5 * h * k1);
    const Y k3 = f(y + 0.5 * h * k2);
    const Y k4 = f(y + h * k3);
    return Y(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  auto node = [&](double s, const Y& y) { return OdeNode{s, y(0), y(1), alpha_hat_second(n, c, tau, y(0), y(1))}; };

  OdeSolution sol;
  sol.n = n;
  sol.c = c;
  sol.tau = tau;
  double s = s_range.first;
  Y y(ivp.first, ivp.second);
  sol.grid.push_back(node(s, y));
  double h = max_step;
  while (s < s_range.second) {
    const double step = std::min(h, s_range.second - s);
    const Y full = rk4(y, step);
    const Y half1 = rk4(y, 0.5 * step);
    const bool half_ok = half1(0) > 0.0;
    const Y half = half_ok ? rk4(half1, 0.5 * step) : Y(-1.0, 0.0);
    const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
    const bool finite = half.allFinite() && full.allFinite();
    if (finite && half(0) > a_min && full(0) > 0.0 && err <= tol * std::max(1.0, half.cwiseAbs().maxCoeff())) {
      s += step;
      y = half + (half - full) / 15.0;
      sol.grid.push_back(node(s, y));
      h = std::min(max_step, step * std::clamp(0.9 * std::pow(tol / std::max(err, 1e-300), 0.2), 0.2, 2.0));
    } else {
      h = 0.5 * step;
      if (h < 1e-9) {
        sol.stopped_early = true;
        sol.stop_s = s;
        break;
      }
    }
  }
  return sol;
}

}  // namespace lightcyl
