#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lightcyl/lorentz.hpp"

namespace lightcyl {

/// Null-position, arc-length curves on LC^2 in E_1^3 with the companion light-like field
/// eta: gamma'' = kappa gamma + eta, eta' = kappa gamma'.
struct CurveSample {
  double t = 0.0;
  Vec gamma;
  Vec gamma_prime;
  Vec eta;
};

struct CurveOnCone {
  std::vector<CurveSample> samples;  ///< uniformly spaced in t
  std::function<double(double)> kappa_fn;
  double max_constraint_drift = 0.0;
  int projections = 0;
};

/// Residuals of <g,g> = 0, <g',g'> = 1, <g,eta> = -1, <eta,eta> = 0, <g',eta> = 0.
struct CurveConstraints {
  double values[5] = {0, 0, 0, 0, 0};
  double max() const;
  /// Names of the constraints whose residual exceeds eps.
  std::vector<std::string> violated(double eps) const;
};

CurveConstraints curve_constraints(const Vec& gamma, const Vec& gamma_prime, const Vec& eta);

struct CurveInitial {
  Vec gamma;
  Vec gamma_prime;
  Vec eta;
};

/// Adaptive RK4 (step doubling) between `samples` uniform output times on [t0, t1].
/// Drift above 10 tol is projected back onto the constraint set.
/// Throws PreconditionError if the initial data violates a constraint by more than 1e-10.
CurveOnCone integrate_lc2_curve(const std::function<double(double)>& kappa_fn, const CurveInitial& initial,
                                double t0, double t1, double tol = 1e-8, int samples = 1001);

struct CurveKappa {
  double kappa = 0.0;
  Vec eta;
};

/// kappa = -<gamma'', eta> with eta solved from the three pairing conditions.
/// Throws PreconditionError unless <g,g> = 0 and <g',g'> = 1 within eps.
CurveKappa curve_kappa(const Vec& gamma, const Vec& gamma_prime, const Vec& gamma_second, double eps = 1e-8);

/// kappa = <gamma', eta'> at interior samples, eta' from five-point differences of the
/// sampled eta. Returns (t, kappa) pairs.
std::vector<std::pair<double, double>> recompute_kappa(const CurveOnCone& curve);

}  // namespace lightcyl
