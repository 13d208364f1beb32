#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lightcyl/errors.hpp"
#include "lightcyl/spline.hpp"
#include "lightcyl/taylor.hpp"

namespace lightcyl {

enum class ExprKind {
  Constant,
  Parameter,
  NamedConstant,
  Neg,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt,
  Sinh,
  Cosh,
  Add,
  Sub,
  Mul,
  Div,
  Pow,         ///< lhs ^ exponent, exponent folded to a constant
  SplineCall,  ///< table-backed univariate function applied to lhs
};

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. `index` is the parameter or spline slot, `value` holds
/// literals, folded named constants and the power exponent.
struct Expr {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;
  int index = -1;
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;
  SourcePos pos;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class AmbientMode { Cylinder, Cone };

struct NamedValue {
  std::string name;
  double value;
};

/// Parsed immersion u -> phi(u) of codimension two. Cylinder mode targets the
/// hypercylinder over the light cone; cone mode (`ambient k cone`) targets the cone itself.
struct ImmersionSpec {
  int n_params = 0;
  int ambient_dim = 0;
  AmbientMode mode = AmbientMode::Cylinder;
  std::vector<std::string> param_names;
  std::vector<Interval> param_domain;
  std::vector<NamedValue> constants;  ///< user constants in declaration order
  std::vector<NamedSpline> splines;
  std::vector<ExprPtr> components;
  std::string source;  ///< text the spec was parsed from

  bool in_domain(std::span<const double> u) const;
};

/// Predeclared constants available in every spec.
const std::vector<NamedValue>& builtin_constants();

ImmersionSpec parse_immersion_spec(const std::string& text);

/// Value of a parameter-free DSL expression such as "2*pi" or "sqrt2/2".
double evaluate_constant_expression(const std::string& text);

/// Canonical DSL text; parsing it yields a spec that evaluates identically.
std::string print_immersion_spec(const ImmersionSpec& spec);
std::string print_expr(const Expr& e, const ImmersionSpec& spec);

std::string describe_point(std::span<const double> u);

namespace detail {

template <typename T>
T make_constant(double v, int nvars);

template <>
inline double make_constant<double>(double v, int) {
  return v;
}
template <>
inline Taylor2 make_constant<Taylor2>(double v, int nvars) {
  return Taylor2::constant(v, nvars);
}

inline double apply(double, double f0, double, double) { return f0; }
inline Taylor2 apply(const Taylor2& x, double f0, double f1, double f2) { return chain(x, f0, f1, f2); }

[[noreturn]] void throw_domain(const Expr& e, const ImmersionSpec& spec, std::span<const double> u,
                               const std::string& why);

}  // namespace detail

/// Evaluate an expression over any scalar with the elementary functions of Taylor2.
/// `args` are the parameter values as scalars; `point` is used for error messages.
template <typename T>
T evaluate(const Expr& e, const ImmersionSpec& spec, std::span<const T> args,
           std::span<const double> point, bool need_derivatives) {
  const int nvars = static_cast<int>(point.size());
  auto sub = [&](const ExprPtr& p) { return evaluate<T>(*p, spec, args, point, need_derivatives); };
  switch (e.kind) {
    case ExprKind::Constant:
    case ExprKind::NamedConstant:
      return detail::make_constant<T>(e.value, nvars);
    case ExprKind::Parameter:
      return args[e.index];
    case ExprKind::Neg:
      return -sub(e.lhs);
    case ExprKind::Add:
      return sub(e.lhs) + sub(e.rhs);
    case ExprKind::Sub:
      return sub(e.lhs) - sub(e.rhs);
    case ExprKind::Mul:
      return sub(e.lhs) * sub(e.rhs);
    case ExprKind::Div: {
      T den = sub(e.rhs);
      if (value_of(den) == 0.0) detail::throw_domain(e, spec, point, "division by zero");
      return sub(e.lhs) / den;
    }
    case ExprKind::Sin: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      return detail::apply(a, std::sin(x), std::cos(x), -std::sin(x));
    }
    case ExprKind::Cos: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      return detail::apply(a, std::cos(x), -std::sin(x), -std::cos(x));
    }
    case ExprKind::Exp: {
      T a = sub(e.lhs);
      const double ex = std::exp(value_of(a));
      return detail::apply(a, ex, ex, ex);
    }
    case ExprKind::Sinh: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      return detail::apply(a, std::sinh(x), std::cosh(x), std::sinh(x));
    }
    case ExprKind::Cosh: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      return detail::apply(a, std::cosh(x), std::sinh(x), std::cosh(x));
    }
    case ExprKind::Log: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      if (!(x > 0.0)) detail::throw_domain(e, spec, point, "log of non-positive value");
      return detail::apply(a, std::log(x), 1.0 / x, -1.0 / (x * x));
    }
    case ExprKind::Sqrt: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      if (x < 0.0 || (need_derivatives && x == 0.0)) {
        detail::throw_domain(e, spec, point, x < 0.0 ? "sqrt of negative value"
                                                     : "sqrt is not differentiable at zero");
      }
      const double r = std::sqrt(x);
      return detail::apply(a, r, need_derivatives ? 0.5 / r : 0.0,
                           need_derivatives ? -0.25 / (r * x) : 0.0);
    }
    case ExprKind::Pow: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      const double p = e.value;
      const bool integral = std::floor(p) == p;
      if (x < 0.0 && !integral) detail::throw_domain(e, spec, point, "non-integer power of negative value");
      if (x == 0.0 && p < 0.0) detail::throw_domain(e, spec, point, "negative power of zero");
      const double f0 = std::pow(x, p);
      double f1 = 0.0;
      double f2 = 0.0;
      if (need_derivatives) {
        if (p != 0.0) {
          if (x == 0.0 && p < 1.0) detail::throw_domain(e, spec, point, "power not differentiable at zero");
          f1 = p == 1.0 ? 1.0 : p * std::pow(x, p - 1.0);
        }
        if (p != 0.0 && p != 1.0) {
          if (x == 0.0 && p < 2.0) detail::throw_domain(e, spec, point, "power not twice differentiable at zero");
          f2 = p == 2.0 ? 2.0 : p * (p - 1.0) * std::pow(x, p - 2.0);
        }
      }
      return detail::apply(a, f0, f1, f2);
    }
    case ExprKind::SplineCall: {
      T a = sub(e.lhs);
      const double x = value_of(a);
      const Spline& s = spec.splines[e.index].spline;
      if (!s.contains(x)) detail::throw_domain(e, spec, point, "argument outside spline range");
      const auto d = s.evaluate(x);
      return detail::apply(a, d[0], d[1], d[2]);
    }
  }
  detail::throw_domain(e, spec, point, "unknown node");
}

/// phi(u) as plain doubles.
Eigen::VectorXd evaluate_point(const ImmersionSpec& spec, std::span<const double> u);

}  // namespace lightcyl
