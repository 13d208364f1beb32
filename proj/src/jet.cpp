#include "lightcyl/jet.hpp"

namespace lightcyl {

namespace {

std::vector<Taylor2> seed_variables(std::span<const double> point) {
  const int n = static_cast<int>(point.size());
  std::vector<Taylor2> vars;
  vars.reserve(n);
  for (int i = 0; i < n; ++i) vars.push_back(Taylor2::variable(point[i], i, n));
  return vars;
}

}  // namespace

Taylor2 eval_expr_jet(const Expr& e, const ImmersionSpec& spec, std::span<const double> point) {
  const std::vector<Taylor2> vars = seed_variables(point);
  return evaluate<Taylor2>(e, spec, std::span<const Taylor2>(vars), point, true);
}

Jet2 eval_jet2(const ImmersionSpec& spec, std::span<const double> point) {
  if (static_cast<int>(point.size()) != spec.n_params) {
    throw DimensionError("eval_jet2: expected " + std::to_string(spec.n_params) + " parameters, got " +
                         std::to_string(point.size()));
  }
  if (!spec.in_domain(point)) throw DomainError("eval_jet2: point " + describe_point(point) + " outside parameter domain");
  const int n = spec.n_params;
  const std::vector<Taylor2> vars = seed_variables(point);
  Jet2 jet;
  jet.value.resize(spec.ambient_dim);
  jet.first.resize(spec.ambient_dim, n);
  jet.second.resize(spec.ambient_dim, Taylor2::packed_size(n));
  for (int c = 0; c < spec.ambient_dim; ++c) {
    const Taylor2 t = evaluate<Taylor2>(*spec.components[c], spec, std::span<const Taylor2>(vars), point, true);
    jet.value(c) = t.value();
    jet.first.row(c) = t.gradient().transpose();
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const int p = Taylor2::packed_index(j, k, n);
        jet.second(c, p) = t.hessian(j, k);
      }
    }
  }
  return jet;
}

}  // namespace lightcyl
