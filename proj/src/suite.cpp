#include "lightcyl/suite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "lightcyl/generators.hpp"

namespace lightcyl {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Family {
  std::string label;
  ImmersionSpec spec;
  std::vector<int> frame_grid;     // >= 100 samples
  std::vector<int> residual_grid;  // a few samples for the expensive checks
};

std::vector<Family> families() {
  std::vector<Family> f;
  f.push_back({"pseudo_umbilical_surface", gen_pseudo_umbilical_surface(1.0), {10, 10}, {3, 3}});
  f.push_back({"ruled_flat", gen_ruled_flat("sin(t)", kappa_half_curve(), {1.5, 3.0}, {0.0, 2 * kPi}), {10, 10}, {3, 3}});
  f.push_back({"cone_surface", gen_cone_surface("2 + sin(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}), {10, 10},
               {3, 3}});
  f.push_back({"product", gen_product(kappa_half_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}), {10, 10}, {3, 3}});
  f.push_back({"example61", gen_example61(), {10, 10}, {3, 3}});
  f.push_back({"isotropic_n3", gen_isotropic(3, 1, 1.0, {0.0, 2.0}), {4, 5, 5}, {2, 2, 2}});
  f.push_back({"pseudo_umbilical_n4", gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0}), {4, 3, 3, 3},
               {2, 2, 2, 2}});
  return f;
}

double tolerance_for(CheckKind k, const Tolerances& tol, double fixed) {
  switch (k) {
    case CheckKind::Algebraic: return tol.algebraic;
    case CheckKind::Differencing: return tol.classification;
    default: return fixed;
  }
}

class Recorder {
public:
  explicit Recorder(const SuiteOptions& opt) : opt_(opt) {}

  /// For control checks `bound` is a lower bound; otherwise the measured value must stay below tolerance.
  void add(std::string name, std::string anchor, CheckKind kind, double measured, double bound = 0.0,
           bool extra = true, std::string detail = {}) {
    SuiteCheck c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.kind = kind;
    c.measured = measured;
    c.tolerance = tolerance_for(kind, opt_.tol, bound);
    if (kind == CheckKind::Control) {
      c.passed = std::isfinite(measured) && measured > c.tolerance && extra;
    } else {
      c.passed = std::isfinite(measured) && measured < c.tolerance && extra;
    }
    c.detail = std::move(detail);
    result.checks.push_back(std::move(c));
  }

  /// Runs `body`; a thrown library error fails the check instead of aborting the suite.
  void guarded(const std::string& name, const std::string& anchor, CheckKind kind, double bound,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, anchor, kind, std::numeric_limits<double>::infinity(), bound, false, std::string("error: ") + e.what());
    }
  }

  SuiteResult result;

private:
  const SuiteOptions& opt_;
};

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// 2-jet of an expression in (s, t), via a throwaway surface spec.
Taylor2 profile_jet(const std::string& expr, double s, double t) {
  const ImmersionSpec sp = parse_immersion_spec("params s, t; ambient 4; map [" + expr + ", 0, 0, 0]");
  const double u[2] = {s, t};
  return eval_expr_jet(*sp.components[0], sp, u);
}

}  // namespace

std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Algebraic: return "algebraic";
    case CheckKind::Differencing: return "differencing";
    case CheckKind::Integration: return "integration";
    case CheckKind::Control: return "control";
  }
  return "?";
}

bool SuiteResult::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const std::vector<TheoremEntry>& theorem_map() {
  static const std::vector<TheoremEntry> m = {
      {"frame: pseudo-orthonormal table", "{e_i; theta, xi} pair as delta_ij, <theta,xi> = -1, theta and xi null"},
      {"frame: axial split", "d/dx_{n+2} restricted to M equals e1 - alpha theta"},
      {"frame: A_theta", "A_theta = diag(0, -1, ..., -1) in the adapted frame"},
      {"frame: Levi-Civita", "nabla_{e1} e1 = 0 and nabla_{e_a} e1 = alpha e_a"},
      {"frame: normal connection", "nabla^perp_{e1} theta = alpha theta and nabla^perp_{e_a} theta = 0"},
      {"frame: second fundamental form",
       "h(e1,e1) = (e1(alpha)+alpha^2) theta, h(e1,e_a) = e_a(alpha) theta, h(e_a,e_a) = -beta_a theta + xi, "
       "h(e_a,e_b) = 0"},
      {"shape operator duality", "<A_zeta X, Y> = <h(X,Y), zeta>"},
      {"mean curvature", "H = H_theta theta + ((n-1)/n) xi with H_theta = (e1(alpha)+alpha^2-sum beta_a)/n"},
      {"Gauss equation", "R(X,Y)Z = A_{h(Y,Z)} X - A_{h(X,Z)} Y"},
      {"Codazzi equation", "(nabla_X h)(Y,Z) = (nabla_Y h)(X,Z)"},
      {"Ricci equation", "R^perp(X,Y) zeta = h(X, A_zeta Y) - h(A_zeta X, Y)"},
      {"pseudo-umbilical <=> alpha, beta conditions (n > 2)",
       "beta_2 = ... = beta_n = beta, e1(alpha)+alpha^2 = -((2n-2)/(n-2)) beta, e_a(alpha) = 0"},
      {"flat normal bundle <=> e_a(alpha) = 0", "R^perp = 0 exactly when every e_a(alpha) vanishes"},
      {"isotropic => 0-isotropic", "a lambda-isotropic submanifold of the hypercylinder has lambda = 0"},
      {"isotropic (n > 2) <=> marginally trapped with A_H = 0", "for n > 2 isotropy means H null and A_H = 0"},
      {"isotropic (n > 2) => pseudo-umbilical", "for n > 2 isotropic submanifolds are pseudo-umbilical"},
      {"Sigma(a,tau) totally umbilical", "the slice (tau, tau Theta) of the light cone has A_gamma = -Id and "
                                         "A_eta = -(c / 2 tau^2) Id"},
      {"no totally umbilical submanifolds", "A_theta has eigenvalues 0 and -1, so no submanifold is totally umbilical"},
      {"alpha-hat ODE", "(n-2) tau^2 a a'' - (n-1)(c + tau^2 a'^2) = 0"},
      {"pseudo-umbilical (n > 2) classification",
       "pseudo-umbilical submanifolds are (alpha-hat(s) gamma, s) over Sigma(a,tau) with alpha-hat solving the ODE; "
       "beta = -(c + tau^2 a'^2)/(2 tau^2 a^2), alpha = a'/a"},
      {"isotropic (n > 2) classification", "isotropic submanifolds are ((eps s + c0)(1, Theta), s)"},
      {"Frenet-like equations on LC^2", "gamma'' = kappa gamma + eta, eta' = kappa gamma'"},
      {"kappa = -1/2 curve", "the curve under the pseudo-umbilical surface has kappa = -1/2"},
      {"product M x I", "d/dx_{n+2} tangent to M; alpha = 0; <h(e_a,e_a),h(e_a,e_a)> = 2 beta_a"},
      {"ruled surfaces are flat", "((s+a(t)) gamma(t), s) has metric ds^2 + (s+a(t))^2 dt^2 and K = 0"},
      {"flat <=> e1(alpha) + alpha^2 = 0", "Gaussian curvature of a surface equals -(e1(alpha)+alpha^2)"},
      {"flat normal bundle surfaces", "(alpha-hat(s) gamma(t), s) has flat normal bundle; t-dependence breaks it"},
      {"isotropic surfaces PDE", "beta = 0 exactly when a^2(a_s^2 + 2 kappa) + 2 a a_tt - 3 a_t^2 = 0"},
      {"pseudo-umbilical surface equivalences",
       "pseudo-umbilical <=> e1(alpha)+alpha^2 = e2(alpha) = beta = 0 <=> flat, marginally trapped, flat normal "
       "bundle <=> A_H = 0"},
      {"pseudo-umbilical surface closed form", "the closed-form surface has H = xi/2 and A_xi = 0"},
      {"hyperplane example", "(s, s/sqrt(t^2+1), s t/sqrt(t^2+1), s) is pseudo-umbilical and lies in x1 = x4"},
  };
  return m;
}

std::vector<Eigen::VectorXd> interior_samples(const ImmersionSpec& spec, const std::vector<int>& per_axis) {
  std::vector<std::vector<double>> axes;
  size_t total = 1;
  for (int i = 0; i < spec.n_params; ++i) {
    axes.push_back(grid_axis(spec.param_domain[static_cast<size_t>(i)], per_axis[static_cast<size_t>(i)]));
    total *= axes.back().size();
  }
  std::vector<Eigen::VectorXd> out;
  for (size_t k = 0; k < total; ++k) {
    Eigen::VectorXd p(spec.n_params);
    size_t rest = k;
    for (int i = spec.n_params - 1; i >= 0; --i) {
      const auto& ax = axes[static_cast<size_t>(i)];
      p(i) = ax[rest % ax.size()];
      rest /= ax.size();
    }
    out.push_back(p);
  }
  return out;
}

SuiteResult run_verification_suite(const SuiteOptions& opt) {
  Recorder rec(opt);
  AnalysisOptions ao;
  ao.tol = opt.tol;
  ao.diff = opt.diff;
  ao.seed = opt.seed;
  const FrameOptions fo{opt.tol, opt.diff};
  const auto fams = families();

  // frame algebra on >= 100 samples per family
  {
    double pairing = 0, axial = 0, atheta = 0, offdiag = 0, h11 = 0, normal_conn = 0;
    size_t count = 0;
    for (const auto& fam : fams) {
      const JetField field = jet_field(fam.spec);
      for (const auto& p : interior_samples(fam.spec, fam.frame_grid)) {
        const AdaptedFrame fr = build_adapted_frame(field, p, fo);
        const Jet2 jet = field.eval(p);
        const SecondFundamentalForm sff = second_fundamental_form(jet, fr);
        const int n = fr.n;
        std::vector<Vec> all = fr.e;
        all.push_back(fr.theta);
        all.push_back(fr.xi);
        for (size_t a = 0; a < all.size(); ++a)
          for (size_t b = a; b < all.size(); ++b) {
            double expect = 0.0;
            if (a < static_cast<size_t>(n) && a == b) expect = 1.0;
            if (a == static_cast<size_t>(n) && b == static_cast<size_t>(n + 1)) expect = -1.0;
            pairing = std::max(pairing, std::abs(minkowski_dot(all[a], all[b]) - expect));
          }
        const Vec axis = Vec::Unit(n + 2, n + 1);
        axial = std::max(axial, (axis - fr.e[0] + fr.alpha * fr.theta).norm());
        Mat diag = Mat::Zero(n, n);
        for (int a = 1; a < n; ++a) diag(a, a) = -1.0;
        atheta = std::max(atheta, max_abs(sff.paired_with(fr.theta) - diag));
        for (int a = 1; a < n; ++a)
          for (int b = 1; b < n; ++b)
            if (a != b)
              offdiag = std::max({offdiag, std::abs(sff.theta_coeff(a, b)), std::abs(sff.xi_coeff(a, b))});
        h11 = std::max(h11, std::abs(sff.pair(0, 0, 0, 0)));
        Eigen::VectorXd w(n);
        for (int j = 0; j < n; ++j) {
          Vec d = jet.first.col(j);
          d(n + 1) = 0.0;
          w(j) = -minkowski_dot(d, fr.xi);
        }
        const Eigen::VectorXd wf = fr.coords.transpose() * w;
        normal_conn = std::max(normal_conn, std::abs(wf(0) - fr.alpha));
        for (int a = 1; a < n; ++a) normal_conn = std::max(normal_conn, std::abs(wf(a)));
        ++count;
      }
    }
    const std::string d = std::to_string(fams.size()) + " families, " + std::to_string(count) + " samples";
    rec.add("frame.pairing_table", "frame: pseudo-orthonormal table", CheckKind::Algebraic, pairing, 0, true, d);
    rec.add("frame.axial_split", "frame: axial split", CheckKind::Algebraic, axial, 0, true, d);
    rec.add("frame.A_theta", "frame: A_theta", CheckKind::Algebraic, atheta, 0, true, d);
    rec.add("frame.h_offdiagonal", "frame: second fundamental form", CheckKind::Algebraic, offdiag, 0, true, d);
    rec.add("frame.h11_lightlike", "frame: second fundamental form", CheckKind::Algebraic, h11, 0, true, d);
    rec.add("frame.normal_connection", "frame: normal connection", CheckKind::Algebraic, normal_conn, 0, true, d);
  }

  // full reports (with structure residuals) on small grids of every family
  std::vector<std::pair<std::string, std::vector<InvariantReport>>> reports;
  for (const auto& fam : fams) {
    std::vector<InvariantReport> rs;
    for (const auto& p : interior_samples(fam.spec, fam.residual_grid)) rs.push_back(analyze_point(fam.spec, std::span<const double>(p.data(), p.size()), ao));
    reports.emplace_back(fam.label, std::move(rs));
  }
  auto reports_of = [&](const std::string& label) -> const std::vector<InvariantReport>& {
    for (const auto& [l, r] : reports)
      if (l == label) return r;
    throw std::logic_error("unknown family " + label);
  };
  {
    double gauss = 0, codazzi = 0, ricci = 0, fb = 0, fe = 0, weing = 0, kcross = 0, mean = 0;
    for (const auto& [label, rs] : reports)
      for (const auto& r : rs) {
        const auto& s = *r.residuals;
        gauss = std::max(gauss, s.gauss);
        codazzi = std::max(codazzi, s.codazzi);
        ricci = std::max(ricci, s.ricci);
        fb = std::max(fb, s.frame_b);
        fe = std::max(fe, s.frame_e);
        weing = std::max(weing, s.weingarten);
        if (s.k_intrinsic) kcross = std::max(kcross, std::abs(*s.k_intrinsic - *s.k_closed));
        double sb = 0;
        for (double b : r.frame.beta) sb += b;
        const int n = r.frame.n;
        mean = std::max({mean, std::abs(r.mean.h_theta - (r.frame.e1_alpha + r.frame.alpha * r.frame.alpha - sb) / n),
                         std::abs(r.mean.h_xi - (n - 1.0) / n)});
      }
    rec.add("frame.levi_civita", "frame: Levi-Civita", CheckKind::Differencing, fb);
    rec.add("frame.h_structure", "frame: second fundamental form", CheckKind::Differencing, fe);
    rec.add("invariants.weingarten", "shape operator duality", CheckKind::Differencing, weing);
    rec.add("invariants.mean_curvature", "mean curvature", CheckKind::Differencing, mean);
    rec.add("structure.gauss", "Gauss equation", CheckKind::Differencing, gauss);
    rec.add("structure.codazzi", "Codazzi equation", CheckKind::Differencing, codazzi);
    rec.add("structure.ricci", "Ricci equation", CheckKind::Differencing, ricci);
    rec.add("structure.gauss_intrinsic_K", "Gauss equation", CheckKind::Differencing, kcross, 0, true,
            "K from h vs K from the metric alone");
  }

  rec.guarded("structure.negative_control", "Gauss equation", CheckKind::Control, 1e-2, [&] {
    double weakest = std::numeric_limits<double>::infinity();
    for (const auto& spec : {gen_cone_surface("cosh(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}),
                             gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0})}) {
      JetField field = jet_field(spec);
      const auto inner = field.eval;
      field.eval = [inner](const Eigen::VectorXd& u) {
        Jet2 j = inner(u);
        j.second.setZero();
        return j;
      };
      for (const auto& p : interior_samples(spec, std::vector<int>(static_cast<size_t>(spec.n_params), 2))) {
        const auto r = structure_residuals(field, p, fo);
        weakest = std::min(weakest, std::max(r.gauss, r.codazzi));
      }
    }
    rec.add("structure.negative_control", "Gauss equation", CheckKind::Control, weakest, 1e-2, true,
            "second derivatives zeroed; smallest max(gauss, codazzi)");
  });

  // corollaries
  {
    double pu = 0.0;
    bool agree = true;
    for (const char* label : {"isotropic_n3", "pseudo_umbilical_n4"})
      for (const auto& r : reports_of(label)) {
        pu = std::max({pu, r.flags.pseudo_umbilical.measure_a, r.flags.pseudo_umbilical.measure_b});
        agree = agree && r.flags.pseudo_umbilical.consistent();
      }
    rec.add("corollary.pseudo_umbilical_n", "pseudo-umbilical <=> alpha, beta conditions (n > 2)",
            CheckKind::Differencing, pu, 0, agree, agree ? "" : "routes disagree");
  }
  {
    double gap = 0.0;
    bool agree = true;
    for (const auto& [label, rs] : reports)
      for (const auto& r : rs) {
        gap = std::max(gap, std::abs(r.flags.flat_normal_bundle.measure_a - r.flags.flat_normal_bundle.measure_b));
        agree = agree && r.flags.flat_normal_bundle.consistent();
      }
    rec.add("corollary.flat_normal_bundle", "flat normal bundle <=> e_a(alpha) = 0", CheckKind::Differencing, gap, 0,
            agree, "max |max e_a(alpha) - max Ricci coefficient|");
  }
  rec.guarded("corollary.isotropic_zero", "isotropic => 0-isotropic", CheckKind::Differencing, 0, [&] {
    double lam = 0.0;
    int constant = 0;
    std::vector<InvariantReport> rs = reports_of("isotropic_n3");
    for (const auto& r : reports_of("pseudo_umbilical_surface")) rs.push_back(r);
    const ImmersionSpec iso4 = gen_isotropic(4, -1, 5.0, {0.0, 4.0});
    for (const auto& p : interior_samples(iso4, {2, 2, 2, 2})) {
      AnalysisOptions a = ao;
      a.residuals = false;
      rs.push_back(analyze_point(iso4, std::span<const double>(p.data(), p.size()), a));
    }
    for (const auto& r : rs)
      if (r.flags.isotropic.route_b) {
        ++constant;
        lam = std::max(lam, std::abs(r.flags.isotropy_lambda));
      }
    rec.add("corollary.isotropic_zero", "isotropic => 0-isotropic", CheckKind::Differencing, lam, 0,
            constant == static_cast<int>(rs.size()),
            std::to_string(constant) + "/" + std::to_string(rs.size()) + " samples with constant isotropy");
  });
  {
    double iso = 0.0;
    bool agree = true;
    for (const auto& r : reports_of("isotropic_n3")) {
      iso = std::max({iso, r.flags.isotropic.measure_a, r.flags.isotropic.measure_b});
      agree = agree && r.flags.isotropic.consistent() && r.flags.marginally_trapped && r.flags.a_h_zero;
    }
    for (const auto& r : reports_of("pseudo_umbilical_n4")) agree = agree && r.flags.isotropic.consistent();
    rec.add("corollary.isotropic_n_gt_2", "isotropic (n > 2) <=> marginally trapped with A_H = 0",
            CheckKind::Differencing, iso, 0, agree);
  }
  rec.guarded("corollary.isotropic_implies_pseudo_umbilical", "isotropic (n > 2) => pseudo-umbilical",
              CheckKind::Differencing, 0, [&] {
                const ImmersionSpec iso4 = gen_isotropic(4, 1, 1.0, {0.0, 2.0});
                double worst = 0.0;
                bool ok = true;
                for (const auto& p : interior_samples(iso4, {2, 2, 2, 2})) {
                  AnalysisOptions a = ao;
                  a.residuals = false;
                  const auto r = analyze_point(iso4, std::span<const double>(p.data(), p.size()), a);
                  ok = ok && r.flags.isotropic.value && r.flags.pseudo_umbilical.value;
                  worst = std::max({worst, r.flags.pseudo_umbilical.measure_a, r.flags.pseudo_umbilical.measure_b});
                }
                rec.add("corollary.isotropic_implies_pseudo_umbilical", "isotropic (n > 2) => pseudo-umbilical",
                        CheckKind::Differencing, worst, 0, ok);
              });

  // totally umbilical: never
  {
    double weakest = std::numeric_limits<double>::infinity();
    bool none = true;
    for (const auto& [label, rs] : reports)
      for (const auto& r : rs) {
        weakest = std::min(weakest, r.flags.totally_umbilical_measure);
        none = none && !r.flags.totally_umbilical;
      }
    rec.add("invariants.no_totally_umbilical", "no totally umbilical submanifolds", CheckKind::Control, weakest, 0.1,
            none, "smallest umbilicity defect of A_theta, A_xi");
  }

  // Sigma(a, tau)
  rec.guarded("sigma.totally_umbilical", "Sigma(a,tau) totally umbilical", CheckKind::Algebraic, 0, [&] {
    double worst = 0.0;
    for (int n : {3, 4})
      for (double tau : {1.0, 2.0}) {
        const ImmersionSpec sp = gen_sigma_tau(n, tau);
        for (const auto& p : interior_samples(sp, std::vector<int>(static_cast<size_t>(n - 1), 4))) {
          const auto c = analyze_cone_point(sp, std::span<const double>(p.data(), p.size()), opt.tol);
          const int m = static_cast<int>(c.A_gamma.rows());
          worst = std::max({worst, max_abs(c.A_gamma + Mat::Identity(m, m)),
                            max_abs(c.A_eta - Mat::Identity(m, m) / (2 * tau * tau)), c.cone_residual});
        }
      }
    rec.add("sigma.totally_umbilical", "Sigma(a,tau) totally umbilical", CheckKind::Algebraic, worst);
  });

  // alpha-hat ODE
  rec.guarded("ode.linear_exact", "alpha-hat ODE", CheckKind::Integration, 1e-8, [&] {
    const OdeSolution sol = solve_alpha_hat_ode(3, -1, 1.0, {1.0, 1.0}, {0.0, 2.0});
    double worst = 0.0;
    for (const auto& g : sol.grid) worst = std::max({worst, std::abs(g.a - (1.0 + g.s)), std::abs(g.da - 1.0)});
    rec.add("ode.linear_exact", "alpha-hat ODE", CheckKind::Integration, worst, 1e-8, !sol.stopped_early,
            "n = 3, c = -1, tau = 1, a(0) = 1, a'(0) = 1 against 1 + s");
  });
  rec.guarded("ode.midpoint_residual", "alpha-hat ODE", CheckKind::Integration, 1e-7, [&] {
    const OdeSolution sol = solve_alpha_hat_ode(3, -1, 1.0, {1.0, 0.0}, {0.0, 1.0});
    rec.add("ode.midpoint_residual", "alpha-hat ODE", CheckKind::Integration, sol.max_midpoint_residual(), 1e-7,
            !sol.stopped_early);
  });
  rec.guarded("theorem.pseudo_umbilical_n", "pseudo-umbilical (n > 2) classification", CheckKind::Differencing, 0,
              [&] {
                OdeSolution sol;
                const ImmersionSpec sp = gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0}, &sol);
                const Spline ah = sol.interpolant();
                double worst = 0.0;
                bool ok = true;
                for (const auto& p : interior_samples(sp, {5, 2, 2, 1})) {
                  AnalysisOptions a = ao;
                  a.residuals = false;
                  const auto r = analyze_point(sp, std::span<const double>(p.data(), p.size()), a);
                  const auto v = ah.evaluate(p(0));
                  const double beta = alpha_hat_beta(-1, 1.0, v[0], v[1]);
                  for (double b : r.frame.beta) worst = std::max(worst, std::abs(b - beta));
                  worst = std::max(worst, std::abs(r.frame.alpha - v[1] / v[0]));
                  worst = std::max(worst, pseudo_umbilical_conditions(r.frame));
                  ok = ok && r.flags.pseudo_umbilical.value;
                }
                rec.add("theorem.pseudo_umbilical_n", "pseudo-umbilical (n > 2) classification",
                        CheckKind::Differencing, worst, 0, ok,
                        "n = 4, c = -1, tau = 1, a(0) = 1, a'(0) = 0; 20 samples");
              });
  rec.guarded("theorem.isotropic_n", "isotropic (n > 2) classification", CheckKind::Integration, 1e-8, [&] {
    const ImmersionSpec a = gen_pseudo_umbilical_n(3, -1, 1.0, {1.0, 1.0}, {0.0, 2.0});
    const ImmersionSpec b = gen_isotropic(3, 1, 1.0, {0.0, 2.0});
    double worst = 0.0;
    for (const auto& p : interior_samples(b, {5, 4, 4})) {
      const std::span<const double> u(p.data(), p.size());
      worst = std::max(worst, (evaluate_point(a, u) - evaluate_point(b, u)).cwiseAbs().maxCoeff());
    }
    rec.add("theorem.isotropic_n", "isotropic (n > 2) classification", CheckKind::Integration, worst, 1e-8, true,
            "ODE-built profile with a' = 1 against eps = 1, c0 = 1");
  });

  // curves on LC^2
  rec.guarded("curve.frenet_closed_form", "Frenet-like equations on LC^2", CheckKind::Integration, 1e-6, [&] {
    const auto kap = [](double) { return -0.5; };
    const CurveOnCone c = integrate_lc2_curve(kap, kappa_half_initial(), 0.0, 2 * kPi, 1e-10, 629);
    const ImmersionSpec ref = parse_immersion_spec(
        "params t; ambient 3; map [(3 - cos(t))/(2*sqrt2), sin(t), (3*cos(t) - 1)/(2*sqrt2)]");
    double worst = 0.0;
    for (const auto& s : c.samples) {
      const double u[1] = {s.t};
      worst = std::max(worst, (s.gamma - evaluate_point(ref, u)).cwiseAbs().maxCoeff());
    }
    rec.add("curve.frenet_closed_form", "Frenet-like equations on LC^2", CheckKind::Integration, worst, 1e-6);
  });
  rec.guarded("curve.constraint_drift", "Frenet-like equations on LC^2", CheckKind::Integration, 1e-6, [&] {
    const CurveOnCone c = integrate_lc2_curve([](double t) { return -0.5 + 0.3 * std::sin(t); }, kappa_half_initial(),
                                              0.0, 4 * kPi, 1e-8, 1257);
    double worst = 0.0;
    for (const auto& s : c.samples) worst = std::max(worst, curve_constraints(s.gamma, s.gamma_prime, s.eta).max());
    rec.add("curve.constraint_drift", "Frenet-like equations on LC^2", CheckKind::Integration, worst, 1e-6, true,
            "kappa = -1/2 + 0.3 sin t over [0, 4 pi], tol 1e-8");
  });
  rec.guarded("curve.kappa_recomputed", "Frenet-like equations on LC^2", CheckKind::Integration, 1e-6, [&] {
    const auto kap = [](double t) { return -0.5 + 0.3 * std::sin(t); };
    const CurveOnCone c = integrate_lc2_curve(kap, kappa_half_initial(), 0.0, 2 * kPi, 1e-10, 2001);
    double worst = 0.0;
    for (const auto& [t, k] : recompute_kappa(c)) worst = std::max(worst, std::abs(k - kap(t)));
    rec.add("curve.kappa_recomputed", "Frenet-like equations on LC^2", CheckKind::Integration, worst, 1e-6, true,
            "<gamma', eta'> from sampled eta");
  });
  rec.guarded("curve.kappa_half", "kappa = -1/2 curve", CheckKind::Algebraic, 0, [&] {
    const ImmersionSpec ref = parse_immersion_spec(
        "params t; ambient 3; map [(3 - cos(t))/(2*sqrt2), sin(t), (3*cos(t) - 1)/(2*sqrt2)]");
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double u[1] = {2 * kPi * (i + 0.5) / 20};
      const Jet2 j = eval_jet2(ref, u);
      const CurveKappa k = curve_kappa(j.value, j.first.col(0), j.second.col(0));
      worst = std::max(worst, std::abs(k.kappa + 0.5));
    }
    rec.add("curve.kappa_half", "kappa = -1/2 curve", CheckKind::Algebraic, worst);
  });

  // product M x I
  {
    double a0 = 0.0, pair = 0.0;
    for (const auto& r : reports_of("product")) {
      a0 = std::max(a0, std::abs(r.frame.alpha));
      Eigen::VectorXd x = Eigen::VectorXd::Unit(2, 1);
      pair = std::max({pair, std::abs(isotropy_quadratic(r.sff, x) - 2 * r.frame.beta[0]),
                       std::abs(r.frame.beta[0] - 0.5)});
    }
    rec.add("product.alpha_zero", "product M x I", CheckKind::Algebraic, a0);
    rec.add("product.beta_pairing", "product M x I", CheckKind::Algebraic, pair, 0, true,
            "<h(e2,e2),h(e2,e2)> = 2 beta and beta = -kappa = 1/2");
  }

  // surfaces
  rec.guarded("surface.ruled_flat", "ruled surfaces are flat", CheckKind::Algebraic, 0, [&] {
    double worst = 0.0;
    for (const auto& [a, curve] : std::vector<std::pair<std::string, ClosedFormCurve>>{
             {"0", circle_curve()}, {"sin(t)", kappa_half_curve()}, {"t", circle_curve()}}) {
      const ImmersionSpec sp = gen_ruled_flat(a, curve, {1.5, 3.0}, {0.0, 2 * kPi});
      for (const auto& p : interior_samples(sp, {10, 10})) {
        const std::span<const double> u(p.data(), p.size());
        const Jet2 j = eval_jet2(sp, u);
        const Mat g = induced_metric(j);
        const double r = p(0) + evaluate_point(parse_immersion_spec("params s, t; ambient 4; map [" + a + ",0,0,0]"),
                                               u)(0);
        worst = std::max({worst, std::abs(g(0, 0) - 1), std::abs(g(0, 1)), std::abs(g(1, 1) - r * r)});
        const JetField field = jet_field(sp);
        const AdaptedFrame fr = build_adapted_frame(field, p, fo);
        worst = std::max(worst, std::abs(gauss_curvature(second_fundamental_form(j, fr))));
      }
    }
    rec.add("surface.ruled_flat", "ruled surfaces are flat", CheckKind::Algebraic, worst, 0, true,
            "metric ds^2 + (s+a)^2 dt^2 and K on 300 samples");
  });
  rec.guarded("surface.flat_criterion", "flat <=> e1(alpha) + alpha^2 = 0", CheckKind::Differencing, 0, [&] {
    double worst = 0.0;
    for (const char* label : {"cone_surface", "ruled_flat", "pseudo_umbilical_surface", "product", "example61"})
      for (const auto& r : reports_of(label)) {
        worst = std::max(worst, std::abs(*r.K + r.frame.e1_alpha + r.frame.alpha * r.frame.alpha));
        worst = std::max(worst, r.flags.flat->consistent() ? 0.0 : 1.0);
      }
    rec.add("surface.flat_criterion", "flat <=> e1(alpha) + alpha^2 = 0", CheckKind::Differencing, worst, 0, true,
            "|K + e1(alpha) + alpha^2|");
  });
  rec.guarded("surface.flat_normal_bundle", "flat normal bundle surfaces", CheckKind::Differencing, 0, [&] {
    double flat = 0.0;
    for (const auto& r : reports_of("cone_surface")) flat = std::max(flat, std::abs(*r.K_perp));
    const ImmersionSpec tw = gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0.0, 2.0});
    double bent = 0.0;
    AnalysisOptions a = ao;
    a.residuals = false;
    for (const auto& p : interior_samples(tw, {3, 3}))
      bent = std::max(bent, std::abs(*analyze_point(tw, std::span<const double>(p.data(), p.size()), a).K_perp));
    rec.add("surface.flat_normal_bundle", "flat normal bundle surfaces", CheckKind::Differencing, flat, 0, bent > 1e-3,
            "K_perp on profile 2 + sin(s); profile 2 + s t reaches |K_perp| = " + fmt(bent));
  });
  rec.guarded("surface.isotropic_pde", "isotropic surfaces PDE", CheckKind::Differencing, 0, [&] {
    double worst = 0.0;
    int agree = 0, total = 0;
    for (const char* prof : {"2 + sin(s)", "2 + s*t", "1 + s + 0.1*s^2", "cosh(s)*(1.5 + 0.2*cos(t))"}) {
      const ImmersionSpec sp = gen_cone_surface(prof, circle_curve(), {-0.5, 0.5}, {0.0, 2.0});
      AnalysisOptions a = ao;
      a.residuals = false;
      for (const auto& p : interior_samples(sp, {3, 3})) {
        const auto r = analyze_point(sp, std::span<const double>(p.data(), p.size()), a);
        const Taylor2 f = profile_jet(prof, p(0), p(1));
        const double A = f.value(), As = f.gradient()(0), At = f.gradient()(1), Att = f.hessian(1, 1);
        const double pde = A * A * (As * As + 2 * -0.5) + 2 * A * Att - 3 * At * At;
        const double beta = -pde / (2 * std::pow(A, 4));
        worst = std::max(worst, std::abs(r.frame.beta[0] - beta));
        ++total;
        if ((std::abs(pde) < opt.tol.classification) == r.flags.isotropic.route_a) ++agree;
      }
    }
    rec.add("surface.isotropic_pde", "isotropic surfaces PDE", CheckKind::Differencing, worst, 0, agree == total,
            "beta against -PDE/(2 a^4) over the circle curve (kappa = -1/2); " + std::to_string(agree) + "/" +
                std::to_string(total) + " flag agreements");
  });
  {
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : reports_of("pseudo_umbilical_surface")) {
      const Flags& f = r.flags;
      ok = ok && f.pseudo_umbilical.route_a && f.pseudo_umbilical.route_b && f.isotropic.value && f.flat->value &&
           f.flat_normal_bundle.value && f.marginally_trapped && f.a_h_zero && *f.surface_equivalences_agree;
      worst = std::max({worst, f.pseudo_umbilical.measure_a, f.pseudo_umbilical.measure_b, f.a_h_norm,
                        std::abs(f.isotropy_lambda)});
    }
    for (const char* label : {"ruled_flat", "cone_surface", "product", "example61"})
      for (const auto& r : reports_of(label)) ok = ok && *r.flags.surface_equivalences_agree;
    rec.add("surface.pseudo_umbilical_equivalences", "pseudo-umbilical surface equivalences", CheckKind::Differencing,
            worst, 0, ok, "closed-form surface: all predicates; other surfaces: predicates agree");
  }
  {
    double worst = 0.0;
    for (const auto& r : reports_of("pseudo_umbilical_surface"))
      worst = std::max({worst, std::abs(r.mean.h_theta), std::abs(r.mean.h_xi - 0.5), max_abs(r.A_xi)});
    rec.add("surface.pseudo_umbilical_closed_form", "pseudo-umbilical surface closed form", CheckKind::Algebraic,
            worst);
  }
  rec.guarded("example61.hyperplane", "hyperplane example", CheckKind::Differencing, 0, [&] {
    const ImmersionSpec sp = gen_example61();
    double plane = 0.0;
    bool pu = true;
    AnalysisOptions a = ao;
    a.residuals = false;
    for (const auto& p : interior_samples(sp, {10, 10})) {
      const std::span<const double> u(p.data(), p.size());
      const Eigen::VectorXd x = evaluate_point(sp, u);
      plane = std::max(plane, std::abs(x(0) - x(3)));
      pu = pu && analyze_point(sp, u, a).flags.pseudo_umbilical.value;
    }
    rec.add("example61.hyperplane", "hyperplane example", CheckKind::Differencing, plane, 0, pu && plane == 0.0,
            "x1 - x4 on a 10x10 grid; pseudo-umbilical at every node");
  });

  return rec.result;
}

std::string suite_text(const SuiteResult& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  " << fmt(c.measured)
       << (c.kind == CheckKind::Control ? " > " : " < ") << fmt(c.tolerance) << "  (" << to_string(c.kind) << ")  ["
       << c.anchor << "]";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  size_t passed = 0;
  for (const auto& c : r.checks) passed += c.passed;
  os << passed << "/" << r.checks.size() << " checks passed\n";
  return os.str();
}

Json suite_json(const SuiteResult& r, const SuiteOptions& opt) {
  Json j;
  j["tool"] = "lightcyl";
  j["version"] = kToolVersion;
  j["tolerances"] = Json{{"algebraic", opt.tol.algebraic}, {"classification", opt.tol.classification}};
  j["seed"] = opt.seed;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["kind"] = std::string(to_string(c.kind));
    e["passed"] = c.passed;
    e["measured"] = std::isfinite(c.measured) ? Json(c.measured) : Json(nullptr);
    e["tolerance"] = c.tolerance;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  j["all_passed"] = r.all_passed();
  return j;
}

}  // namespace lightcyl
