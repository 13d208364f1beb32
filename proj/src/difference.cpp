#include "lightcyl/difference.hpp"

#include "lightcyl/errors.hpp"

namespace lightcyl {

void require_stencil(const Eigen::VectorXd& point, std::span<const Interval> domain, const DifferenceOptions& opt,
                     double reach) {
  if (static_cast<Eigen::Index>(domain.size()) != point.size()) {
    throw DimensionError("stencil: domain and point dimensions differ");
  }
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    const double h = reach * difference_step(point(i), opt);
    if (!domain[i].contains(point(i) - h) || !domain[i].contains(point(i) + h)) {
      throw StencilError("stencil of half-width " + std::to_string(h) + " along coordinate " + std::to_string(i) +
                         " leaves the domain at " + describe_point(std::span<const double>(point.data(), point.size())));
    }
  }
}

FieldDerivative differentiate_field(const VectorField& field, const Eigen::VectorXd& point,
                                    std::span<const Interval> domain, const DifferenceOptions& opt) {
  require_stencil(point, domain, opt);
  FieldDerivative out;
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    const double h = difference_step(point(j), opt);
    auto central = [&](double step) {
      Eigen::VectorXd plus = point;
      Eigen::VectorXd minus = point;
      plus(j) += step;
      minus(j) -= step;
      return Eigen::VectorXd((field(plus) - field(minus)) / (2.0 * step));
    };
    const Eigen::VectorXd coarse = central(h);
    const Eigen::VectorXd fine = central(0.5 * h);
    const Eigen::VectorXd richardson = (4.0 * fine - coarse) / 3.0;
    if (j == 0) {
      out.jacobian.resize(richardson.size(), point.size());
      out.error.resize(richardson.size(), point.size());
    }
    out.jacobian.col(j) = richardson;
    out.error.col(j) = (richardson - fine).cwiseAbs();
  }
  return out;
}

ScalarGradient eval_scalar_field_jet(const ScalarField& field, const Eigen::VectorXd& point,
                                     std::span<const Interval> domain, const DifferenceOptions& opt) {
  const FieldDerivative d = differentiate_field(
      [&](const Eigen::VectorXd& u) { return Eigen::VectorXd::Constant(1, field(u)); }, point, domain, opt);
  return {d.jacobian.row(0).transpose(), d.error.row(0).transpose()};
}

}  // namespace lightcyl
