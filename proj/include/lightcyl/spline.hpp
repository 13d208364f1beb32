#pragma once

#include <array>
#include <string>
#include <vector>

namespace lightcyl {

/// Knot of a C2 interpolant: abscissa with value, first and second derivative.
struct SplineKnot {
  double x;
  double value;
  double d1;
  double d2;
};

/// Piecewise quintic Hermite interpolant through value/slope/curvature data. Reproduces
/// quintic polynomials exactly and is C2 across knots.
class Spline {
public:
  Spline() = default;
  explicit Spline(std::vector<SplineKnot> knots);

  bool contains(double x) const {
    return !knots_.empty() && x >= knots_.front().x && x <= knots_.back().x;
  }
  double lo() const { return knots_.front().x; }
  double hi() const { return knots_.back().x; }
  const std::vector<SplineKnot>& knots() const { return knots_; }

  /// {f, f', f''} at x; x must lie in [lo, hi].
  std::array<double, 3> evaluate(double x) const;

private:
  std::vector<SplineKnot> knots_;
};

struct NamedSpline {
  std::string name;
  Spline spline;
};

}  // namespace lightcyl
