#include "lightcyl/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lightcyl {

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::SpaceLike:
      return "space-like";
    case CausalCharacter::TimeLike:
      return "time-like";
    case CausalCharacter::LightLike:
      return "light-like";
  }
  return "unknown";
}

CausalCharacter causal_character(const Vec& v, double eps) {
  const double euclid2 = v.squaredNorm();
  if (euclid2 == 0.0) return CausalCharacter::SpaceLike;
  const double q = minkowski_norm2(v);
  if (std::abs(q) <= eps * (1.0 + euclid2)) return CausalCharacter::LightLike;
  return q > 0.0 ? CausalCharacter::SpaceLike : CausalCharacter::TimeLike;
}

std::vector<Vec> orthonormalize_spacelike(const std::vector<Vec>& vectors, double eps) {
  std::vector<Vec> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!out.empty() && vectors[i].size() != out.front().size()) {
      throw DimensionError("orthonormalize_spacelike: vectors of different length");
    }
    Vec w = vectors[i];
    const double scale = std::max(1.0, w.squaredNorm());
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& e : out) w -= minkowski_dot(w, e) * e;
    }
    const double q = minkowski_norm2(w);
    if (!(q > eps * scale)) {
      throw DegenerateSubspaceError("orthonormalize_spacelike: vector " + std::to_string(i) +
                                    " has non-positive residual norm " + std::to_string(q));
    }
    out.push_back(w / std::sqrt(q));
  }
  return out;
}

Vec complete_pseudo_orthonormal(const Vec& theta, const std::vector<Vec>& tangent_basis,
                                double eps) {
  const Eigen::Index k = theta.size();
  for (const Vec& e : tangent_basis) {
    if (e.size() != k) throw DimensionError("complete_pseudo_orthonormal: length mismatch");
  }
  const double theta_scale = std::max(theta.norm(), 1e-300);
  for (Eigen::Index seed = 0; seed < k; ++seed) {
    Vec w = Vec::Unit(k, seed);
    for (const Vec& e : tangent_basis) w -= minkowski_dot(w, e) * e;
    const double pairing = minkowski_dot(w, theta);
    if (std::abs(pairing) <= eps * theta_scale) continue;
    const Vec v = w * (-1.0 / pairing);
    Vec xi = v + (0.5 * minkowski_norm2(v)) * theta;
    return xi;
  }
  throw DegenerateNormalError("complete_pseudo_orthonormal: no seed pairs with theta");
}

double asymmetry(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("asymmetry: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

std::vector<EigenPair> symmetric_eigen(const Mat& op, double eps) {
  if (op.rows() != op.cols()) throw DimensionError("symmetric_eigen: matrix is not square");
  std::vector<EigenPair> out;
  if (op.rows() == 0) return out;
  if (asymmetry(op) > eps) throw PreconditionError("symmetric_eigen: matrix is not symmetric");
  const Mat sym = 0.5 * (op + op.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  for (Eigen::Index i = 0; i < sym.rows(); ++i) {
    Eigen::VectorXd v = solver.eigenvectors().col(i);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    out.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  return out;
}

}  // namespace lightcyl
