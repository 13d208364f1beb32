#include "lightcyl/spline.hpp"

#include <algorithm>
#include <stdexcept>

#include "lightcyl/errors.hpp"

namespace lightcyl {

Spline::Spline(std::vector<SplineKnot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw PreconditionError("Spline: need at least two knots");
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (!(knots_[k].x > knots_[k - 1].x)) throw PreconditionError("Spline: abscissae must increase strictly");
  }
}

std::array<double, 3> Spline::evaluate(double x) const {
  if (!contains(x)) throw DomainError("Spline: argument outside [" + std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x, [](double v, const SplineKnot& k) { return v < k.x; });
  const std::size_t right = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - knots_.begin(), 1), knots_.size() - 1);
  const SplineKnot& a = knots_[right - 1];
  const SplineKnot& b = knots_[right];
  const double h = b.x - a.x;
  const double t = (x - a.x) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;

  // Quintic Hermite basis on [0,1] and its first two derivatives in t.
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double h3 = 0.5 * (t3 - 2 * t4 + t5);
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5;

  const double d0 = -30 * t2 + 60 * t3 - 30 * t4;
  const double d1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double d2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
  const double d3 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
  const double d4 = -12 * t2 + 28 * t3 - 15 * t4;
  const double d5 = -d0;

  const double s0 = -60 * t + 180 * t2 - 120 * t3;
  const double s1 = -36 * t + 96 * t2 - 60 * t3;
  const double s2 = 0.5 * (2 - 18 * t + 36 * t2 - 20 * t3);
  const double s3 = 0.5 * (6 * t - 24 * t2 + 20 * t3);
  const double s4 = -24 * t + 84 * t2 - 60 * t3;
  const double s5 = -s0;

  auto combine = [&](double b0, double b1, double b2, double b3, double b4, double b5) {
    return a.value * b0 + h * a.d1 * b1 + h * h * a.d2 * b2 + h * h * b.d2 * b3 + h * b.d1 * b4 + b.value * b5;
  };
  return {combine(h0, h1, h2, h3, h4, h5), combine(d0, d1, d2, d3, d4, d5) / h,
          combine(s0, s1, s2, s3, s4, s5) / (h * h)};
}

}  // namespace lightcyl
