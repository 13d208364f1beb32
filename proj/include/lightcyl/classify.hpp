#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lightcyl/invariants.hpp"
#include "lightcyl/structure.hpp"

namespace lightcyl {

/// A predicate evaluated along two independent characterizations.
struct DualFlag {
  bool value = false;    ///< route_a
  bool route_a = false;
  bool route_b = false;
  double measure_a = 0.0;
  double measure_b = 0.0;
  bool consistent() const { return route_a == route_b; }
};

struct Flags {
  DualFlag pseudo_umbilical;    ///< a: A_H proportional to Id; b: conditions on alpha, beta
  DualFlag flat_normal_bundle;  ///< a: e_a(alpha) = 0; b: Ricci equation with A_theta
  DualFlag isotropic;           ///< a: beta (n = 2) or marginally trapped with A_H = 0; b: sampled directions
  std::optional<DualFlag> flat; ///< surfaces: a: K = 0; b: e1(alpha) + alpha^2 = 0
  double isotropy_lambda = 0.0; ///< mean of <h(X,X),h(X,X)> over sampled unit X
  double isotropy_spread = 0.0; ///< max - min over the same sample
  bool marginally_trapped = false;
  bool minimal = false;
  bool totally_umbilical = false;
  double totally_umbilical_measure = 0.0;
  bool alpha_zero = false;
  bool a_h_zero = false;
  double a_h_norm = 0.0;
  std::optional<bool> surface_equivalences_agree;  ///< surfaces: the four equivalent predicates agree

  bool inconsistent() const;
};

/// max over |beta_a - mean|, |e1(alpha)+alpha^2 + (2n-2)/(n-2) mean beta|, |e_a(alpha)|.
/// Throws DimensionError for n = 2, where the coefficient is singular.
double pseudo_umbilical_conditions(const AdaptedFrame& frame);

/// Surfaces: max(|e1(alpha)+alpha^2|, |e2(alpha)|, |beta|). Throws DimensionError for n != 2.
double surface_pseudo_umbilical_conditions(const AdaptedFrame& frame);

/// `count` unit vectors in R^n from a Halton sequence started at index seed + 1.
std::vector<Eigen::VectorXd> isotropy_directions(int n, int count, std::uint64_t seed);

Flags classify(const AdaptedFrame& frame, const SecondFundamentalForm& sff, const MeanCurvature& mean,
               const std::vector<Eigen::VectorXd>& directions, const Tolerances& tol = {});

struct AnalysisOptions {
  Tolerances tol;
  DifferenceOptions diff;
  std::uint64_t seed = 0;
  int directions = 128;
  bool residuals = true;  ///< structure residuals need two steps of room around the point
};

struct InvariantReport {
  Eigen::VectorXd point;
  AdaptedFrame frame;
  SecondFundamentalForm sff;
  Mat A_theta;
  Mat A_xi;
  MeanCurvature mean;
  std::optional<double> K;
  std::optional<double> K_perp;
  std::optional<StructureResiduals> residuals;
  Flags flags;
};

InvariantReport analyze_point(const JetField& field, const Eigen::VectorXd& point, const AnalysisOptions& opt = {});
InvariantReport analyze_point(const ImmersionSpec& spec, std::span<const double> point,
                              const AnalysisOptions& opt = {});

}  // namespace lightcyl
