#pragma once

#include <utility>
#include <vector>

#include "lightcyl/spline.hpp"

namespace lightcyl {

/// (n-2) tau^2 a a'' - (n-1)(c + tau^2 a'^2) = 0 for the radial profile a = alpha-hat(s).
double alpha_hat_second(int n, int c, double tau, double a, double da);
double alpha_hat_residual(int n, int c, double tau, double a, double da, double dda);

/// beta = -(c + tau^2 a'^2) / (2 tau^2 a^2).
double alpha_hat_beta(int c, double tau, double a, double da);

struct OdeNode {
  double s = 0.0;
  double a = 0.0;
  double da = 0.0;
  double dda = 0.0;
};

struct OdeSolution {
  std::vector<OdeNode> grid;
  int n = 0;
  int c = 0;
  double tau = 1.0;
  bool stopped_early = false;  ///< a fell to a_min before the end of the range
  double stop_s = 0.0;

  /// Hermite interpolant through (a, a', a'') at the grid nodes.
  Spline interpolant() const;
  /// Largest |ODE residual| of the interpolant at grid midpoints.
  double max_midpoint_residual() const;
};

/// Adaptive RK4 with step doubling from s_range.first to s_range.second.
/// Throws DimensionError for n <= 2 and PreconditionError for a0 <= 0 or tau <= 0.
OdeSolution solve_alpha_hat_ode(int n, int c, double tau, std::pair<double, double> ivp,
                                std::pair<double, double> s_range, double tol = 1e-10, double max_step = 0.02,
                                double a_min = 1e-6);

}  // namespace lightcyl
