#include <cmath>

#include <gtest/gtest.h>

#include "lightcyl/frame.hpp"
#include "lightcyl/generators.hpp"
#include "lightcyl/invariants.hpp"

using namespace lightcyl;

namespace {

constexpr double kR = 0.70710678118654752440;

Jet2 flat_jet(const Vec& value) {
  Jet2 j;
  j.value = value;
  j.first = Mat::Zero(4, 2);
  j.first(1, 0) = 1.0;
  j.first(2, 1) = 1.0;
  j.second = Mat::Zero(4, 3);
  return j;
}

Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

AdaptedFrame frame_at(const ImmersionSpec& spec, std::vector<double> u) { return build_adapted_frame(spec, u); }

}  // namespace

TEST(CylinderCheck, ProjectionOfNullPoint) {
  const auto c = check_on_cylinder(flat_jet(v4(kR, 0, kR, 5)));
  EXPECT_NEAR(c.cone_residual, 0.0, 1e-15);
  EXPECT_TRUE(c.future_flag);
}

TEST(CylinderCheck, OffConePointIsInadmissible) {
  const auto c = check_on_cylinder(flat_jet(v4(1, 1, 1, 0)));
  EXPECT_NEAR(c.cone_residual, 1.0, 1e-15);
  EXPECT_FALSE(c.admissible(1e-6));
}

TEST(CylinderCheck, PseudoUmbilicalSurfacePoint) {
  const auto spec = gen_pseudo_umbilical_surface(1.0);
  const double u[2] = {0.0, M_PI / 2};
  const Jet2 j = eval_jet2(spec, u);
  EXPECT_LT((j.value - v4(3 / (2 * M_SQRT2), 1, -1 / (2 * M_SQRT2), 0)).norm(), 1e-15);
  EXPECT_LT(check_on_cylinder(j).cone_residual, 1e-15);
  const double o[2] = {0.0, 0.0};
  EXPECT_LT((evaluate_point(spec, o) - v4(kR, 0, kR, 0)).norm(), 1e-15);
}

TEST(Theta, DropsAxialCoordinate) {
  EXPECT_LT((build_theta(flat_jet(v4(kR, 0, kR, 5))) - v4(kR, 0, kR, 0)).norm(), 1e-15);
  EXPECT_EQ(build_theta(flat_jet(v4(kR, 0, kR, 0))), v4(kR, 0, kR, 0));
  const auto spec = gen_example61();
  const double u[2] = {1.0, 0.0};
  const Jet2 j = eval_jet2(spec, u);
  EXPECT_LT((j.value - v4(1, 1, 0, 1)).norm(), 1e-15);
  EXPECT_LT((build_theta(j) - v4(1, 1, 0, 0)).norm(), 1e-15);
}

TEST(Frame, ProductHasTangentAxis) {
  const auto spec = gen_product(kappa_half_curve(), {-1, 1}, {0, 2 * M_PI});
  const auto f = frame_at(spec, {0.2, 1.0});
  EXPECT_NEAR(f.alpha, 0.0, 1e-14);
  EXPECT_TRUE(f.product_type);
  EXPECT_LT((f.e[0] - v4(0, 0, 0, 1)).norm(), 1e-14);
}

TEST(Frame, RuledSurfaceAlpha) {
  const auto spec = gen_ruled_flat("0", circle_curve(), {0.5, 2.5}, {0, 2 * M_PI});
  EXPECT_NEAR(frame_at(spec, {2.0, 1.0}).alpha, 0.5, 1e-14);
  const auto f = frame_at(spec, {1.0, 1e-3 + 0.5});
  EXPECT_NEAR(f.alpha, 1.0, 1e-14);
  EXPECT_NEAR(f.e1_alpha, -1.0, 1e-8);
  EXPECT_NEAR(f.e1_alpha + f.alpha * f.alpha, 0.0, 1e-8);
}

TEST(Frame, PseudoUmbilicalSurfaceAlphaAndBeta) {
  const auto spec = gen_pseudo_umbilical_surface(1.0, {-0.5, 2.0});
  const auto f = frame_at(spec, {0.0, 1.3});
  EXPECT_NEAR(f.alpha, 1.0, 1e-12);
  ASSERT_EQ(f.beta.size(), 1u);
  EXPECT_NEAR(f.beta[0], 0.0, 1e-12);
  const double u[2] = {0.0, 1.3};
  const auto sff = second_fundamental_form(eval_jet2(spec, u), f);
  EXPECT_LT(sff.paired_with(f.xi).cwiseAbs().maxCoeff(), 1e-12);
  // h(e2, e2) = xi
  EXPECT_LT((sff(1, 1) - f.xi).norm(), 1e-12);
}

TEST(Frame, IsotropicBetasVanish) {
  const auto spec = gen_isotropic(3, 1, 2.0);
  const auto f = frame_at(spec, {1.0, 1.0, 2.0});
  ASSERT_EQ(f.beta.size(), 2u);
  EXPECT_NEAR(f.beta[0], 0.0, 1e-10);
  EXPECT_NEAR(f.beta[1], 0.0, 1e-10);
}

TEST(Frame, PairingTableAndAxialSplit) {
  const auto spec = gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0, 2});
  const auto f = frame_at(spec, {0.3, 1.1});
  std::vector<Vec> all = f.e;
  all.push_back(f.theta);
  all.push_back(f.xi);
  const double expect[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(minkowski_dot(all[a], all[b]), expect[a][b], 1e-12) << a << b;
  EXPECT_LT((v4(0, 0, 0, 1) - (f.e[0] - f.alpha * f.theta)).norm(), 1e-12);
  EXPECT_GT(f.theta(0), 0.0);
  EXPECT_GT(f.xi(0), 0.0);
  EXPECT_GT(std::abs(f.ea_alpha[0]), 1e-3);
}

TEST(Frame, HigherDimensionalFrameIsOrthonormal) {
  const auto spec = gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0});
  const auto f = frame_at(spec, {0.4, 1.0, 1.2, 2.0});
  ASSERT_EQ(f.e.size(), 4u);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(minkowski_dot(f.e[a], f.e[b]), a == b ? 1.0 : 0.0, 1e-12);
  ASSERT_EQ(f.beta.size(), 3u);
  EXPECT_NEAR(f.beta[0], f.beta[2], 1e-10);
}

TEST(Frame, OffCylinderSpecIsRejected) {
  const auto spec = parse_immersion_spec("params s, t; domain s in [1, 2]; domain t in [0, 1]; ambient 4; map [2*s, s*cos(t), s*sin(t), t]");
  EXPECT_THROW(frame_at(spec, {1.5, 0.5}), NotOnCylinderError);
}

TEST(Frame, ConeModeSpecIsRejected) {
  const auto spec = gen_sigma_tau(3, 1.0);
  EXPECT_THROW(frame_at(spec, {1.0, 1.0}), DimensionError);
}

TEST(Frame, StencilNearBoundary) {
  const auto spec = gen_pseudo_umbilical_surface(1.0);
  EXPECT_THROW(frame_at(spec, {0.0, 1.0}), StencilError);
}
