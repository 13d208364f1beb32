#include "lightcyl/taylor.hpp"

#include <cassert>

namespace lightcyl {

namespace {

Eigen::VectorXd packed_outer(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int n) {
  Eigen::VectorXd out(Taylor2::packed_size(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out(k++) = a(i) * b(j) + a(j) * b(i);
  }
  return out;
}

}  // namespace

Taylor2 Taylor2::constant(double value, int nvars) {
  return Taylor2(value, Eigen::VectorXd::Zero(nvars), Eigen::VectorXd::Zero(packed_size(nvars)),
                 nvars);
}

Taylor2 Taylor2::variable(double value, int index, int nvars) {
  Taylor2 t = constant(value, nvars);
  t.g_(index) = 1.0;
  return t;
}

Eigen::MatrixXd Taylor2::hessian_matrix() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m(i, j) = hessian(i, j);
  }
  return m;
}

Taylor2 chain(const Taylor2& a, double f0, double f1, double f2) {
  // d2 f(a) = f' d2 a + f'' da da^T; packed_outer doubles the product, hence the 0.5.
  return Taylor2(f0, f1 * a.g_, f1 * a.h_ + (0.5 * f2) * packed_outer(a.g_, a.g_, a.n_), a.n_);
}

Taylor2 operator+(const Taylor2& a, const Taylor2& b) {
  assert(a.n_ == b.n_);
  return Taylor2(a.v_ + b.v_, a.g_ + b.g_, a.h_ + b.h_, a.n_);
}

Taylor2 operator-(const Taylor2& a, const Taylor2& b) {
  assert(a.n_ == b.n_);
  return Taylor2(a.v_ - b.v_, a.g_ - b.g_, a.h_ - b.h_, a.n_);
}

Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
  assert(a.n_ == b.n_);
  return Taylor2(a.v_ * b.v_, b.v_ * a.g_ + a.v_ * b.g_,
                 b.v_ * a.h_ + a.v_ * b.h_ + packed_outer(a.g_, b.g_, a.n_), a.n_);
}

Taylor2 operator-(const Taylor2& a) { return Taylor2(-a.v_, -a.g_, -a.h_, a.n_); }

Taylor2 operator*(double c, const Taylor2& a) { return Taylor2(c * a.v_, c * a.g_, c * a.h_, a.n_); }

Taylor2 operator/(const Taylor2& a, const Taylor2& b) {
  const double x = b.value();
  return a * chain(b, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

}  // namespace lightcyl
