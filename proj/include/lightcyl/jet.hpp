#pragma once

#include <span>

#include "lightcyl/expr.hpp"
#include "lightcyl/lorentz.hpp"

namespace lightcyl {

/// Value, first and second partial derivatives of phi at a parameter point.
struct Jet2 {
  Vec value;    ///< phi(u)
  Mat first;    ///< ambient x n, column j is d phi / d u_j
  Mat second;   ///< ambient x n(n+1)/2, packed upper triangle of d2 phi / du_j du_k

  int n_params() const { return static_cast<int>(first.cols()); }
  int ambient_dim() const { return static_cast<int>(value.size()); }
  Vec d2(int j, int k) const { return second.col(Taylor2::packed_index(j, k, n_params())); }
};

/// Exact 2-jet of every component, evaluated over Taylor2 scalars. The point must lie in
/// the parameter domain (boundary allowed).
Jet2 eval_jet2(const ImmersionSpec& spec, std::span<const double> point);

/// 2-jet of a single expression (used by tests and curve tools).
Taylor2 eval_expr_jet(const Expr& e, const ImmersionSpec& spec, std::span<const double> point);

}  // namespace lightcyl
