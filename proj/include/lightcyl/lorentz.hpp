#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lightcyl/errors.hpp"

namespace lightcyl {

/// Ambient coordinates x_1..x_k of Minkowski space; the metric is -dx_1^2 + dx_2^2 + ... + dx_k^2.
template <typename Scalar>
using MinkowskiVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vec = MinkowskiVector<double>;
using Mat = Eigen::MatrixXd;

enum class CausalCharacter { SpaceLike, TimeLike, LightLike };

std::string_view to_string(CausalCharacter c);

/// Indefinite inner product with the minus sign on the first coordinate.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar minkowski_dot(const Eigen::MatrixBase<DerivedA>& u,
                                        const Eigen::MatrixBase<DerivedB>& v) {
  if (u.size() != v.size()) {
    throw DimensionError("minkowski_dot: length mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
  if (u.size() == 0) return typename DerivedA::Scalar(0);
  return -u(0) * v(0) + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

template <typename Derived>
typename Derived::Scalar minkowski_norm2(const Eigen::MatrixBase<Derived>& v) {
  return minkowski_dot(v, v);
}

/// Gram matrix G^T eta G of the columns of `columns`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> minkowski_gram(
    const Eigen::MatrixBase<Derived>& columns) {
  using S = typename Derived::Scalar;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> eta_cols = columns;
  eta_cols.row(0) *= S(-1);
  return columns.transpose() * eta_cols;
}

/// Unit time direction d/dx_1 in dimension k.
inline Vec time_axis(Eigen::Index k) { return Vec::Unit(k, 0); }

/// Classification with |<v,v>| <= eps * (1 + |v|^2_euclid) treated as zero.
/// The zero vector is space-like.
CausalCharacter causal_character(const Vec& v, double eps = 1e-9);

/// Modified Gram-Schmidt under the Minkowski product. The input must span a space-like
/// subspace; the first output is the normalized first input.
std::vector<Vec> orthonormalize_spacelike(const std::vector<Vec>& vectors, double eps = 1e-9);

/// The unique light-like xi with <xi,xi> = 0, <xi,theta> = -1 and <xi,e_i> = 0, for a
/// light-like theta orthogonal to the orthonormal space-like `tangent_basis` in dimension n+2.
/// Seeds d/dx_1, d/dx_2, ... are tried in order.
Vec complete_pseudo_orthonormal(const Vec& theta, const std::vector<Vec>& tangent_basis,
                                double eps = 1e-9);

struct EigenPair {
  double value;
  Eigen::VectorXd vector;
};

/// Full spectrum of a symmetric matrix, ascending; each eigenvector has its
/// largest-magnitude component positive.
std::vector<EigenPair> symmetric_eigen(const Mat& op, double eps = 1e-9);

/// max |M_ij - M_ji| / max(1, max |M|).
double asymmetry(const Mat& m);

}  // namespace lightcyl
