#pragma once

#include <Eigen/Dense>

namespace lightcyl {

/// Second-order truncated Taylor polynomial in n variables: value, n first-order and
/// n(n+1)/2 second-order coefficients (packed upper triangle). Arithmetic is exact up to
/// roundoff, so derivatives carry no truncation error and the Hessian is symmetric by storage.
class Taylor2 {
public:
  Taylor2() = default;

  static Taylor2 constant(double value, int nvars);
  static Taylor2 variable(double value, int index, int nvars);

  double value() const { return v_; }
  int nvars() const { return n_; }
  const Eigen::VectorXd& gradient() const { return g_; }
  double hessian(int i, int j) const { return h_(packed_index(i, j, n_)); }
  Eigen::MatrixXd hessian_matrix() const;

  static int packed_size(int n) { return n * (n + 1) / 2; }
  static int packed_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  }

  /// f(a) given f, f', f'' evaluated at a.value().
  friend Taylor2 chain(const Taylor2& a, double f0, double f1, double f2);

  friend Taylor2 operator+(const Taylor2& a, const Taylor2& b);
  friend Taylor2 operator-(const Taylor2& a, const Taylor2& b);
  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b);
  friend Taylor2 operator-(const Taylor2& a);
  friend Taylor2 operator*(double c, const Taylor2& a);

private:
  Taylor2(double v, Eigen::VectorXd g, Eigen::VectorXd h, int n)
      : v_(v), g_(std::move(g)), h_(std::move(h)), n_(n) {}

  double v_ = 0.0;
  Eigen::VectorXd g_;
  Eigen::VectorXd h_;
  int n_ = 0;
};

Taylor2 operator/(const Taylor2& a, const Taylor2& b);

inline double value_of(double x) { return x; }
inline double value_of(const Taylor2& x) { return x.value(); }

}  // namespace lightcyl
