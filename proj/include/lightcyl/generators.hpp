#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lightcyl/curve.hpp"
#include "lightcyl/expr.hpp"
#include "lightcyl/ode.hpp"

namespace lightcyl {

/// Arc-length null-position curve on LC^2 given by DSL expressions in `t`.
struct ClosedFormCurve {
  std::string name;
  std::array<std::string, 3> components;
  Interval domain;
};

/// (1, cos t, sin t); kappa = -1/2.
ClosedFormCurve circle_curve();
/// ((3 - cos t)/(2 sqrt2), sin t, (3 cos t - 1)/(2 sqrt2)); kappa = -1/2.
ClosedFormCurve kappa_half_curve();

/// Integrated curves are embedded as quintic Hermite splines g1, g2, g3.
using CurveSource = std::variant<ClosedFormCurve, CurveOnCone>;

/// Initial data at t = 0 matching kappa_half_curve().
CurveInitial kappa_half_initial();

/// Position vector (tau, tau Theta) of Sigma(a, tau) in E_1^{n+1}, angles t2..tn (cone mode).
ImmersionSpec gen_sigma_tau(int n, double tau);

/// ((s + a(t)) gamma(t), s). Throws DomainError if s + a(t) <= 0 somewhere on the domain.
ImmersionSpec gen_ruled_flat(const std::string& a_expr, const CurveSource& curve, Interval s, Interval t);

/// (ahat(s,t) gamma(t), s) for an arbitrary positive profile ahat.
ImmersionSpec gen_cone_surface(const std::string& ahat_expr, const CurveSource& curve, Interval s, Interval t);

/// Closed-form pseudo-umbilical surface with shift c1.
ImmersionSpec gen_pseudo_umbilical_surface(double c1, Interval s = {0.0, 2.0}, Interval t = {0.0, 6.283185307179586});

/// ((eps s + c0)(1, Theta), s) with angles t2..tn.
ImmersionSpec gen_isotropic(int n, int eps, double c0, Interval s = {0.0, 2.0});

/// (ahat(s) (tau, tau Theta), s) with ahat from the ODE. Only c = -1 is available.
/// Throws BlowDownError if ahat collapses inside s.
ImmersionSpec gen_pseudo_umbilical_n(int n, int c, double tau, std::pair<double, double> ivp, Interval s,
                                     OdeSolution* solution = nullptr);

/// (gamma(t), s): d/dx_{n+2} is tangent and alpha vanishes.
ImmersionSpec gen_product(const CurveSource& curve, Interval s, Interval t);

/// (s, s/sqrt(t^2+1), s t/sqrt(t^2+1), s).
ImmersionSpec gen_example61(Interval s = {0.5, 2.0}, Interval t = {-1.0, 1.0});

struct FamilyInfo {
  std::string name;
  std::string parameters;  ///< key=value list with defaults
  std::string description;
};

const std::vector<FamilyInfo>& generator_families();

/// Generator lookup by family name with key=value parameters (unset keys use defaults).
/// Throws UsageError for unknown families, unknown keys or unparsable values.
ImmersionSpec generate_family(const std::string& family, const std::map<std::string, std::string>& params);

/// Interior grid of `count` points per axis used to validate positivity conditions.
std::vector<double> sample_interval(Interval iv, int count);

}  // namespace lightcyl
