#include "lightcyl/structure.hpp"

#include <cmath>
#include <vector>

namespace lightcyl {

namespace {

struct Tensor4 {
  int n;
  std::vector<double> v;
  explicit Tensor4(int n_) : n(n_), v(static_cast<size_t>(n_ * n_ * n_ * n_), 0.0) {}
  double& operator()(int a, int b, int c, int d) { return v[static_cast<size_t>(((a * n + b) * n + c) * n + d)]; }
  double operator()(int a, int b, int c, int d) const {
    return v[static_cast<size_t>(((a * n + b) * n + c) * n + d)];
  }
};

/// T'(a,b,c,d) = sum C(p,a) C(q,b) C(r,c) C(s,d) T(p,q,r,s)
Tensor4 to_frame(const Tensor4& t, const Mat& C) {
  const int n = t.n;
  Tensor4 cur = t;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4 next(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            int idx[4] = {a, b, c, d};
            double s = 0.0;
            for (int p = 0; p < n; ++p) {
              int src[4] = {a, b, c, d};
              src[slot] = p;
              s += C(p, idx[slot]) * cur(src[0], src[1], src[2], src[3]);
            }
            next(a, b, c, d) = s;
          }
    cur = std::move(next);
  }
  return cur;
}

Mat tangent_projector_rows(const Jet2& jet) {
  // rows give coordinates: c = g^{-1} J^T eta v
  Mat jt = jet.first.transpose();
  jt.col(0) *= -1.0;
  return induced_metric(jet).ldlt().solve(jt);
}

Vec normal_part(const Jet2& jet, const Mat& coords_map, const Vec& v) { return v - jet.first * (coords_map * v); }

Eigen::VectorXd flat_metric(const Jet2& jet) {
  const Mat g = induced_metric(jet);
  return Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<std::pair<std::string, double>> StructureResiduals::entries() const {
  std::vector<std::pair<std::string, double>> out{
      {"gauss", gauss},     {"codazzi", codazzi}, {"ricci", ricci},         {"frame_a", frame_a},
      {"frame_b", frame_b}, {"frame_c", frame_c}, {"frame_d", frame_d},     {"frame_e", frame_e},
      {"weingarten", weingarten}, {"lightlike_h11", lightlike_h11}};
  return out;
}

Eigen::VectorXd jet_christoffel(const Jet2& jet) {
  const int n = jet.n_params();
  const Mat ginv = induced_metric(jet).inverse();
  Eigen::VectorXd G(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd low(n);
      for (int l = 0; l < n; ++l) low(l) = minkowski_dot(jet.d2(i, j), Vec(jet.first.col(l)));
      const Eigen::VectorXd up = ginv * low;
      for (int m = 0; m < n; ++m) G(m * n * n + i * n + j) = up(m);
    }
  return G;
}

Eigen::VectorXd metric_christoffel(const JetField& field, const Eigen::VectorXd& point, const DifferenceOptions& diff) {
  const int n = field.n_params;
  const Jet2 jet = field.eval(point);
  const Mat ginv = induced_metric(jet).inverse();
  const FieldDerivative dg = differentiate_field([&field](const Eigen::VectorXd& u) { return flat_metric(field.eval(u)); },
                                                 point, field.domain, diff);
  auto d = [&](int k, int a, int b) { return dg.jacobian(b * n + a, k); };  // d_k g_ab (column-major)
  Eigen::VectorXd G(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(m, l) * (d(i, l, j) + d(j, l, i) - d(l, i, j));
        G(m * n * n + i * n + j) = 0.5 * s;
      }
  return G;
}

StructureResiduals structure_residuals(const JetField& field, const Eigen::VectorXd& point, const FrameOptions& opt) {
  require_stencil(point, field.domain, opt.diff, 2.1);
  return structure_residuals(field, build_adapted_frame(field, point, opt), opt);
}

StructureResiduals structure_residuals(const ImmersionSpec& spec, std::span<const double> point,
                                       const FrameOptions& opt) {
  if (spec.mode != AmbientMode::Cylinder)
    throw DimensionError("structure_residuals: immersion is not into the hypercylinder");
  if (static_cast<int>(point.size()) != spec.n_params) throw DimensionError("structure_residuals: wrong point length");
  return structure_residuals(jet_field(spec), Eigen::Map<const Eigen::VectorXd>(point.data(), point.size()), opt);
}

StructureResiduals structure_residuals(const JetField& field, const AdaptedFrame& frame, const FrameOptions& opt) {
  const Eigen::VectorXd& u = frame.point;
  require_stencil(u, field.domain, opt.diff, 2.1);
  const int n = frame.n;
  const int k = field.ambient_dim;
  const Jet2 jet = field.eval(u);
  const Mat& C = frame.coords;
  const SecondFundamentalForm sff = second_fundamental_form(jet, frame);
  const CoordinateNormalForm cnf = coordinate_normal_form(jet, frame.theta, frame.xi);
  const Mat g = induced_metric(jet);
  const Tolerances tol = opt.tol;
  StructureResiduals r;

  // frame_a: pairing table and axial decomposition
  {
    std::vector<Vec> all = frame.e;
    all.push_back(frame.theta);
    all.push_back(frame.xi);
    const int m = static_cast<int>(all.size());
    double worst = frame.decomposition_residual;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        double expect = 0.0;
        if (a < n && a == b) expect = 1.0;
        if (a == n && b == n + 1) expect = -1.0;
        worst = std::max(worst, std::abs(minkowski_dot(all[static_cast<size_t>(a)], all[static_cast<size_t>(b)]) - expect));
      }
    const Vec axis = Vec::Unit(k, k - 1);
    worst = std::max(worst, (axis - frame.e[0] + frame.alpha * frame.theta).norm());
    r.frame_a = worst;
  }

  // frame_c and frame_e: algebraic shape of h in the adapted frame
  const Mat A_theta = sff.paired_with(frame.theta);
  const Mat A_xi = sff.paired_with(frame.xi);
  {
    Mat expect = Mat::Zero(n, n);
    for (int a = 1; a < n; ++a) expect(a, a) = -1.0;
    r.frame_c = max_abs(A_theta - expect);

    Mat t_expect = Mat::Zero(n, n);
    t_expect(0, 0) = frame.e1_alpha + frame.alpha * frame.alpha;
    for (int a = 1; a < n; ++a) {
      t_expect(0, a) = t_expect(a, 0) = frame.ea_alpha[static_cast<size_t>(a - 1)];
      t_expect(a, a) = -frame.beta[static_cast<size_t>(a - 1)];
    }
    r.frame_e = std::max(max_abs(sff.theta_coeff - t_expect), max_abs(sff.xi_coeff + expect));
    r.lightlike_h11 = std::abs(sff.pair(0, 0, 0, 0));
  }

  // frame_d: w_j = -<D_j theta, xi> exactly from the jet; D_j theta is d_j phi without its last entry
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) {
    Vec dtheta = jet.first.col(j);
    dtheta(k - 1) = 0.0;
    w(j) = -minkowski_dot(dtheta, frame.xi);
  }
  {
    const Eigen::VectorXd wf = C.transpose() * w;
    double worst = std::abs(wf(0) - frame.alpha);
    for (int a = 1; a < n; ++a) worst = std::max(worst, std::abs(wf(a)));
    r.frame_d = worst;
  }

  // weingarten: <A_zeta e_i, e_j> = -<D_{e_i} zeta, e_j>
  {
    Mat dtheta(k, n);
    for (int j = 0; j < n; ++j) {
      dtheta.col(j) = jet.first.col(j);
      dtheta(k - 1, j) = 0.0;
    }
    const FieldDerivative dxi = differentiate_field(
        [&field, tol](const Eigen::VectorXd& v) {
          const Jet2 j = field.eval(v);
          return Eigen::VectorXd(xi_at(j, build_theta(j), tol));
        },
        u, field.domain, opt.diff);
    Mat wt(n, n), wx(n, n);
    for (int i = 0; i < n; ++i) {
      const Vec dt = dtheta * C.col(i);
      const Vec dx = dxi.jacobian * C.col(i);
      for (int j = 0; j < n; ++j) {
        wt(i, j) = -minkowski_dot(dt, frame.e[static_cast<size_t>(j)]);
        wx(i, j) = -minkowski_dot(dx, frame.e[static_cast<size_t>(j)]);
      }
    }
    r.weingarten = std::max(max_abs(wt - A_theta), max_abs(wx - A_xi));
  }

  // frame_b: covariant derivative of the e1 field
  {
    const FieldDerivative de1 = differentiate_field(
        [&field, tol](const Eigen::VectorXd& v) {
          const Jet2 j = field.eval(v);
          return Eigen::VectorXd(build_e1_alpha(j, build_theta(j), tol).e1);
        },
        u, field.domain, opt.diff);
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
      const Vec d = de1.jacobian * C.col(a);
      for (int b = 0; b < n; ++b) {
        const double expect = (a > 0 && a == b) ? frame.alpha : 0.0;
        worst = std::max(worst, std::abs(minkowski_dot(d, frame.e[static_cast<size_t>(b)]) - expect));
      }
    }
    r.frame_b = worst;
  }

  // ricci: Omega_ij = d_i w_j - d_j w_i gives R^perp(d_i,d_j) theta = Omega_ij theta
  {
    const FieldDerivative dw = differentiate_field(
        [&field, tol, k, n](const Eigen::VectorXd& v) {
          const Jet2 j = field.eval(v);
          const Vec th = build_theta(j);
          const Vec xi = xi_at(j, th, tol);
          Eigen::VectorXd out(n);
          for (int c = 0; c < n; ++c) {
            Vec dt = j.first.col(c);
            dt(k - 1) = 0.0;
            out(c) = -minkowski_dot(dt, xi);
          }
          return out;
        },
        u, field.domain, opt.diff);
    const Mat omega = dw.jacobian.transpose() - dw.jacobian;  // (i,j): d_i w_j - d_j w_i
    const Mat of = C.transpose() * omega * C;
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const auto [tt, tx] = ricci_rhs(sff, A_theta, a, b);
        const auto [xt, xx] = ricci_rhs(sff, A_xi, a, b);
        // R^perp theta = Omega theta and R^perp xi = -Omega xi
        worst = std::max({worst, std::abs(tt - of(a, b)), std::abs(tx), std::abs(xt), std::abs(xx + of(a, b))});
      }
    r.ricci = worst;
  }

  // codazzi
  {
    const Mat cmap = tangent_projector_rows(jet);
    const int P = n * (n + 1) / 2;
    const FieldDerivative dh = differentiate_field(
        [&field, k, n, P](const Eigen::VectorXd& v) {
          const Jet2 j = field.eval(v);
          const Mat cm = tangent_projector_rows(j);
          Eigen::VectorXd out(k * P);
          for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
              out.segment(k * Taylor2::packed_index(a, b, n), k) = normal_part(j, cm, j.d2(a, b));
          return out;
        },
        u, field.domain, opt.diff);
    const Eigen::VectorXd G = jet_christoffel(jet);
    auto gam = [&](int m, int i, int j) { return G(m * n * n + i * n + j); };
    auto hvec = [&](int a, int b) { return Vec(normal_part(jet, cmap, jet.d2(a, b))); };
    auto Dh = [&](int i, int a, int b) {
      return Vec(dh.jacobian.block(k * Taylor2::packed_index(a, b, n), i, k, 1));
    };
    auto nabla_h = [&](int i, int j, int l) {
      Vec out = normal_part(jet, cmap, Dh(i, j, l));
      for (int m = 0; m < n; ++m) out -= gam(m, i, j) * hvec(m, l) + gam(m, i, l) * hvec(j, m);
      return out;
    };
    // T(i,j,l) = (nabla_i h)(j,l) - (nabla_j h)(i,l), as theta/xi coefficients
    std::vector<double> tth(static_cast<size_t>(n * n * n)), txi(static_cast<size_t>(n * n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const Vec t = nabla_h(i, j, l) - nabla_h(j, i, l);
          tth[static_cast<size_t>((i * n + j) * n + l)] = -minkowski_dot(t, frame.xi);
          txi[static_cast<size_t>((i * n + j) * n + l)] = -minkowski_dot(t, frame.theta);
        }
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double st = 0.0, sx = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int l = 0; l < n; ++l) {
                const double w3 = C(i, a) * C(j, b) * C(l, c);
                st += w3 * tth[static_cast<size_t>((i * n + j) * n + l)];
                sx += w3 * txi[static_cast<size_t>((i * n + j) * n + l)];
              }
          worst = std::max({worst, std::abs(st), std::abs(sx)});
        }
    r.codazzi = worst;
  }

  // gauss: Riemann tensor of the metric alone vs the Gauss equation
  {
    const FieldDerivative dG = differentiate_field(
        [&field, &opt](const Eigen::VectorXd& v) { return metric_christoffel(field, v, opt.diff); }, u, field.domain,
        opt.diff);
    const Eigen::VectorXd G = metric_christoffel(field, u, opt.diff);
    auto gam = [&](int m, int i, int j) { return G(m * n * n + i * n + j); };
    auto dgam = [&](int d, int m, int i, int j) { return dG.jacobian(m * n * n + i * n + j, d); };
    // Rup(l,i,j,k): R(d_j,d_k) d_i = Rup d_l
    Tensor4 Rlow(n), E(n);
    std::vector<double> rup(static_cast<size_t>(n * n * n * n));
    auto ru = [&](int l, int i, int j, int kk) -> double& {
      return rup[static_cast<size_t>(((l * n + i) * n + j) * n + kk)];
    };
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int kk = 0; kk < n; ++kk) {
            double s = dgam(j, l, kk, i) - dgam(kk, l, j, i);
            for (int m = 0; m < n; ++m) s += gam(l, j, m) * gam(m, kk, i) - gam(l, kk, m) * gam(m, j, i);
            ru(l, i, j, kk) = s;
          }
    auto hp = [&](int a, int b, int c, int d) {
      return -(cnf.theta_coeff(a, b) * cnf.xi_coeff(c, d) + cnf.xi_coeff(a, b) * cnf.theta_coeff(c, d));
    };
    // index order (x, y, z, w) = <R(d_x,d_y) d_z, d_w>
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int wi = 0; wi < n; ++wi) {
            double s = 0.0;
            for (int l = 0; l < n; ++l) s += g(wi, l) * ru(l, z, x, y);
            Rlow(x, y, z, wi) = s;
            E(x, y, z, wi) = hp(y, z, x, wi) - hp(x, z, y, wi);
          }
    const Tensor4 Rf = to_frame(Rlow, C);
    const Tensor4 Ef = to_frame(E, C);
    double worst = 0.0;
    for (size_t i = 0; i < Rf.v.size(); ++i) worst = std::max(worst, std::abs(Rf.v[i] - Ef.v[i]));
    r.gauss = worst;
    if (n == 2) {
      r.k_intrinsic = Rf(0, 1, 1, 0);
      r.k_closed = gauss_curvature(sff);
    }
  }
  return r;
}

}  // namespace lightcyl
