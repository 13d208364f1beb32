#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "lightcyl/expr.hpp"
#include "lightcyl/tolerances.hpp"

namespace lightcyl {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Partial derivatives of a field along the coordinate directions with an error estimate.
struct FieldDerivative {
  Eigen::MatrixXd jacobian;  ///< rows: field components, columns: d/du_j
  Eigen::MatrixXd error;     ///< |Richardson - finest central difference|
};

struct ScalarGradient {
  Eigen::VectorXd gradient;
  Eigen::VectorXd error;
};

/// Step used along coordinate i at point u.
inline double difference_step(double u_i, const DifferenceOptions& opt) { return opt.step_scale * (1.0 + std::abs(u_i)); }

/// Central differences at steps h and h/2 combined by one Richardson level.
/// Throws StencilError if u +- h leaves `domain`.
FieldDerivative differentiate_field(const VectorField& field, const Eigen::VectorXd& point,
                                    std::span<const Interval> domain, const DifferenceOptions& opt = {});

/// Gradient of a derived scalar (for instance alpha) along the coordinate directions.
ScalarGradient eval_scalar_field_jet(const ScalarField& field, const Eigen::VectorXd& point,
                                     std::span<const Interval> domain, const DifferenceOptions& opt = {});

/// Throws StencilError unless every coordinate has room for `reach` steps on both sides.
void require_stencil(const Eigen::VectorXd& point, std::span<const Interval> domain, const DifferenceOptions& opt,
                     double reach = 1.0);

}  // namespace lightcyl
