#include <cmath>

#include <gtest/gtest.h>

#include "lightcyl/classify.hpp"
#include "lightcyl/generators.hpp"
#include "lightcyl/structure.hpp"

using namespace lightcyl;

namespace {

struct Point {
  ImmersionSpec spec;
  std::vector<double> u;
  Jet2 jet;
  AdaptedFrame frame;
  SecondFundamentalForm sff;

  Point(ImmersionSpec s, std::vector<double> p) : spec(std::move(s)), u(std::move(p)) {
    jet = eval_jet2(spec, u);
    frame = build_adapted_frame(spec, u);
    sff = second_fundamental_form(jet, frame);
  }
};

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

InvariantReport report(const ImmersionSpec& spec, std::vector<double> u) { return analyze_point(spec, u); }

}  // namespace

TEST(ShapeOperator, ThetaIsDiagonal) {
  for (const auto& p : {Point(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0}),
                        Point(gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.1, 0.7}),
                        Point(gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0})}) {
    const Mat A = shape_operator(p.sff, p.frame, p.frame.theta);
    Mat expect = -Mat::Identity(p.frame.n, p.frame.n);
    expect(0, 0) = 0.0;
    EXPECT_LT(max_abs(A - expect), 1e-12);
  }
}

TEST(ShapeOperator, XiVanishesOnIsotropicAndIsLinear) {
  const Point iso(gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0});
  EXPECT_LT(max_abs(shape_operator(iso.sff, iso.frame, iso.frame.xi)), 1e-10);

  const Point pu(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  const Mat sum = shape_operator(pu.sff, pu.frame, pu.frame.theta + pu.frame.xi);
  Mat expect = Mat::Zero(2, 2);
  expect(1, 1) = -1.0;
  EXPECT_LT(max_abs(sum - expect), 1e-12);
}

TEST(ShapeOperator, RejectsTangentZeta) {
  const Point pu(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  EXPECT_THROW(shape_operator(pu.sff, pu.frame, pu.frame.e[1]), NotNormalError);
}

TEST(SecondFundamentalForm, FrameStructure) {
  const Point p(gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.1, 0.7});
  const auto& f = p.frame;
  EXPECT_LT((p.sff(0, 0) - (f.e1_alpha + f.alpha * f.alpha) * f.theta).norm(), 1e-8);
  EXPECT_LT((p.sff(0, 1) - f.ea_alpha[0] * f.theta).norm(), 1e-8);
  EXPECT_LT((p.sff(1, 1) - (-f.beta[0] * f.theta + f.xi)).norm(), 1e-12);
  EXPECT_LT(max_abs(p.sff.theta_coeff - p.sff.theta_coeff.transpose()), 1e-14);
}

TEST(SecondFundamentalForm, RuledSurfaceH11VanishesWhereFlat) {
  const Point p(gen_ruled_flat("0", circle_curve(), {0.5, 2.5}, {0, 2 * M_PI}), {1.0, 0.5});
  EXPECT_LT(p.sff(0, 0).norm(), 1e-12);
}

TEST(MeanCurvature, PseudoUmbilicalSurface) {
  const Point p(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  const auto m = mean_curvature(p.sff, p.frame);
  EXPECT_LT((m.H - 0.5 * p.frame.xi).norm(), 1e-12);
  EXPECT_LT(max_abs(m.A_H), 1e-12);
  EXPECT_TRUE(m.marginally_trapped);
  EXPECT_EQ(m.causal, CausalCharacter::LightLike);
  EXPECT_FALSE(m.minimal);
}

TEST(MeanCurvature, IsotropicN3) {
  // trace of h: (e1(alpha) + alpha^2 - sum beta) theta / n + ((n - 1)/n) xi, and every theta term vanishes here
  const Point p(gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0});
  const auto m = mean_curvature(p.sff, p.frame);
  EXPECT_LT((m.H - 2 * p.frame.xi / 3).norm(), 1e-10);
  Vec trace = Vec::Zero(5);
  for (int i = 0; i < 3; ++i) trace += p.sff(i, i) / 3;
  EXPECT_LT((m.H - trace).norm(), 1e-14);
  EXPECT_LT(max_abs(m.A_H), 1e-10);
}

TEST(MeanCurvature, ProductIsSpaceLikeUnlessBetaVanishes) {
  // alpha = 0, so H = (-beta/2) theta + xi/2 and <H,H> = beta/2
  const Point p(gen_product(kappa_half_curve(), {-1, 1}, {0, 2 * M_PI}), {0.0, 1.0});
  const auto m = mean_curvature(p.sff, p.frame);
  EXPECT_NEAR(m.h_theta, -p.frame.beta[0] / 2, 1e-12);
  EXPECT_NEAR(m.norm2, p.frame.beta[0] / 2, 1e-12);
  EXPECT_EQ(m.causal, CausalCharacter::SpaceLike);
}

TEST(GaussCurvature, FlatAndCurvedSurfaces) {
  EXPECT_NEAR(gauss_curvature(Point(gen_ruled_flat("sin(t)", kappa_half_curve(), {1.5, 3}, {0, 6}), {2.0, 1.0}).sff),
              0.0, 1e-12);
  EXPECT_NEAR(gauss_curvature(Point(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0}).sff), 0.0, 1e-12);
  // K = -ahat''/ahat for the profile 2 + sin(s)
  const Point c(gen_cone_surface("2 + sin(s)", circle_curve(), {-1, 1}, {0, 2 * M_PI}), {0.3, 1.0});
  EXPECT_NEAR(gauss_curvature(c.sff), std::sin(0.3) / (2 + std::sin(0.3)), 1e-12);
  EXPECT_NEAR(gauss_curvature(c.sff) + c.frame.e1_alpha + c.frame.alpha * c.frame.alpha, 0.0, 1e-8);
}

TEST(GaussCurvature, SurfacesOnly) {
  const Point p(gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0});
  EXPECT_THROW(gauss_curvature(p.sff), DimensionError);
  EXPECT_THROW(normal_curvature(p.sff, p.frame), DimensionError);
}

TEST(NormalCurvature, VanishesWithoutTDependence) {
  const Point p(gen_cone_surface("2 + sin(s)", circle_curve(), {-1, 1}, {0, 2 * M_PI}), {0.3, 1.0});
  EXPECT_NEAR(normal_curvature(p.sff, p.frame), 0.0, 1e-12);
  const Point pu(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  EXPECT_NEAR(normal_curvature(pu.sff, pu.frame), 0.0, 1e-12);
}

TEST(NormalCurvature, MatchesEaAlpha) {
  const Point p(gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.1, 0.7});
  const double kp = normal_curvature(p.sff, p.frame);
  EXPECT_GT(std::abs(kp), 1e-3);
  EXPECT_NEAR(kp, -p.frame.ea_alpha[0], 1e-8);
  // ruled surface with a(t) = t: d alpha/dt = -1/(s + t)^2 and e2 = d/dt / (s + t), so |e2(alpha)| = 1/8 at (1, 1)
  const Point r(gen_ruled_flat("t", circle_curve(), {0.5, 2.5}, {0.0, 2.0}), {1.0, 1.0});
  EXPECT_NEAR(std::abs(normal_curvature(r.sff, r.frame)), 0.125, 1e-7);
}

TEST(Structure, ResidualsSmallOnGenerators) {
  for (const auto& [spec, u] : std::vector<std::pair<ImmersionSpec, std::vector<double>>>{
           {gen_pseudo_umbilical_surface(1.0), {1.0, 2.0}},
           {gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.1, 0.7}},
           {gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0}},
           {gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0}), {0.5, 1.0, 1.0, 2.0}},
           {gen_product(kappa_half_curve(), {-1, 1}, {0, 2 * M_PI}), {0.0, 1.0}}}) {
    const auto r = structure_residuals(spec, u);
    for (const auto& [name, value] : r.entries()) EXPECT_LT(value, 1e-4) << name;
  }
}

TEST(Structure, ProductFrameConnection) {
  const auto r = structure_residuals(gen_product(kappa_half_curve(), {-1, 1}, {0, 2 * M_PI}), std::vector<double>{0.0, 1.0});
  EXPECT_LT(r.frame_b, 1e-8);
}

TEST(Structure, IntrinsicCurvatureAgrees) {
  const auto r =
      structure_residuals(gen_cone_surface("2 + sin(s)", circle_curve(), {-1, 1}, {0, 2 * M_PI}), std::vector<double>{0.3, 1.0});
  ASSERT_TRUE(r.k_intrinsic && r.k_closed);
  EXPECT_NEAR(*r.k_intrinsic, std::sin(0.3) / (2 + std::sin(0.3)), 1e-6);
  EXPECT_NEAR(*r.k_intrinsic, *r.k_closed, 1e-6);
}

TEST(Structure, CorruptedJetIsCaught) {
  const auto spec = gen_cone_surface("cosh(s)", circle_curve(), {-1, 1}, {0, 2 * M_PI});
  JetField field = jet_field(spec);
  const auto inner = field.eval;
  field.eval = [inner](const Eigen::VectorXd& u) {
    Jet2 j = inner(u);
    j.second.setZero();
    return j;
  };
  const auto r = structure_residuals(field, Eigen::Vector2d(0.2, 1.0));
  EXPECT_GT(std::max(r.gauss, r.codazzi), 1e-2);
}

TEST(Classify, PseudoUmbilicalSurfaceEquivalences) {
  const auto r = report(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  const Flags& f = r.flags;
  EXPECT_TRUE(f.pseudo_umbilical.route_a && f.pseudo_umbilical.route_b);
  EXPECT_TRUE(f.isotropic.route_a && f.isotropic.route_b);
  EXPECT_NEAR(f.isotropy_lambda, 0.0, 1e-10);
  ASSERT_TRUE(f.flat.has_value());
  EXPECT_TRUE(f.flat->value);
  EXPECT_TRUE(f.flat_normal_bundle.value);
  EXPECT_TRUE(f.marginally_trapped);
  EXPECT_TRUE(f.a_h_zero);
  EXPECT_TRUE(*f.surface_equivalences_agree);
  EXPECT_FALSE(f.inconsistent());
  EXPECT_FALSE(f.totally_umbilical);
}

TEST(Classify, IsotropicHigherDimensions) {
  for (const auto& [spec, u] : std::vector<std::pair<ImmersionSpec, std::vector<double>>>{
           {gen_isotropic(3, 1, 1.0), {1.0, 1.0, 3.0}},
           {gen_isotropic(4, 1, 1.0), {1.0, 1.0, 1.5, 3.0}},
           {gen_isotropic(3, -1, 5.0, {0.0, 4.0}), {2.0, 1.0, 3.0}}}) {
    const auto r = report(spec, u);
    EXPECT_TRUE(r.flags.isotropic.route_a);
    EXPECT_TRUE(r.flags.isotropic.route_b);
    EXPECT_LT(std::abs(r.flags.isotropy_lambda), 1e-6);
    EXPECT_TRUE(r.flags.pseudo_umbilical.value);
    EXPECT_TRUE(r.flags.marginally_trapped);
    EXPECT_LT(r.flags.a_h_norm, 1e-5);
  }
}

TEST(Classify, GenericSurfaceFlags) {
  const auto r = report(gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.1, 0.7});
  EXPECT_FALSE(r.flags.flat_normal_bundle.route_a);
  EXPECT_FALSE(r.flags.flat_normal_bundle.route_b);
  EXPECT_FALSE(r.flags.pseudo_umbilical.value);
  // metric ds^2 + ahat^2 dt^2 with ahat_ss = 0: flat despite the t-dependence
  EXPECT_TRUE(r.flags.flat->value);
  EXPECT_FALSE(r.flags.totally_umbilical);
  EXPECT_TRUE(*r.flags.surface_equivalences_agree);
}

TEST(Classify, ProductAlphaZero) {
  const auto r = report(gen_product(kappa_half_curve(), {-1, 1}, {0, 2 * M_PI}), {0.0, 1.0});
  EXPECT_TRUE(r.flags.alpha_zero);
  EXPECT_NEAR(r.frame.beta[0], 0.5, 1e-12);
  EXPECT_NEAR(isotropy_quadratic(r.sff, Eigen::Vector2d(0, 1)), 1.0, 1e-12);
}

TEST(Classify, SurfaceIsotropyNeedsMoreThanBeta) {
  // beta = 0 at s = 0 but e1(alpha) + alpha^2 = 0.2, so <h(X,X),h(X,X)> still varies with X
  const auto r = report(gen_cone_surface("1 + s + 0.1*s^2", circle_curve(), {-0.5, 0.5}, {0, 2}), {0.0, 1.0});
  EXPECT_NEAR(r.frame.beta[0], 0.0, 1e-12);
  EXPECT_NEAR(r.frame.e1_alpha + r.frame.alpha * r.frame.alpha, 0.2, 1e-7);
  EXPECT_TRUE(r.flags.isotropic.route_a);
  EXPECT_FALSE(r.flags.isotropic.route_b);
  // <h(X,X),h(X,X)> = -0.4 sin^2 cos^2 over unit X, so the spread is 0.1
  EXPECT_NEAR(r.flags.isotropy_spread, 0.1, 1e-3);
  EXPECT_TRUE(r.flags.inconsistent());
}

TEST(Classify, PseudoUmbilicalConditionsNeedNAboveTwo) {
  const Point p(gen_pseudo_umbilical_surface(1.0), {1.0, 2.0});
  EXPECT_THROW(pseudo_umbilical_conditions(p.frame), DimensionError);
  EXPECT_LT(surface_pseudo_umbilical_conditions(p.frame), 1e-10);
}

TEST(Classify, IsotropyDirectionsAreDeterministicUnitVectors) {
  const auto a = isotropy_directions(3, 128, 0);
  const auto b = isotropy_directions(3, 128, 0);
  const auto c = isotropy_directions(3, 128, 1);
  ASSERT_EQ(a.size(), 128u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_NEAR(a[i].norm(), 1.0, 1e-15);
  }
  EXPECT_NE(a[0], c[0]);
}
