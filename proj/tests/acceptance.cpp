// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cli_run.hpp"
#include "lightcyl/generators.hpp"
#include "lightcyl/structure.hpp"
#include "lightcyl/suite.hpp"
#include "random_expr.hpp"

using namespace lightcyl;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  if (!v.pass) ++failures;
  std::printf("%s criterion %d: %s | %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str());
  std::fflush(stdout);
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<std::pair<std::string, ImmersionSpec>> frame_families() {
  return {
      {"pseudo_umbilical_surface", gen_pseudo_umbilical_surface(1.0)},
      {"ruled_flat", gen_ruled_flat("sin(t)", kappa_half_curve(), {1.5, 3.0}, {0.0, 2 * kPi})},
      {"product", gen_product(kappa_half_curve(), {-1.0, 1.0}, {0.0, 2 * kPi})},
      {"example61", gen_example61()},
      {"isotropic_n3", gen_isotropic(3, 1, 1.0)},
      {"pseudo_umbilical_n4", gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0})},
  };
}

std::vector<int> frame_grid(int n) {
  if (n == 2) return {10, 10};
  if (n == 3) return {4, 5, 5};
  return {4, 3, 3, 3};
}

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  double table = 0, atheta = 0, axial = 0, offdiag = 0, h11 = 0;
  size_t min_samples = SIZE_MAX;
  const auto fams = frame_families();
  for (const auto& [name, spec] : fams) {
    const JetField field = jet_field(spec);
    const auto pts = interior_samples(spec, frame_grid(spec.n_params));
    min_samples = std::min(min_samples, pts.size());
    for (const auto& p : pts) {
      const AdaptedFrame f = build_adapted_frame(field, p);
      const SecondFundamentalForm h = second_fundamental_form(field.eval(p), f);
      const int n = f.n;
      std::vector<Vec> all = f.e;
      all.push_back(f.theta);
      all.push_back(f.xi);
      for (int a = 0; a < n + 2; ++a)
        for (int b = 0; b < n + 2; ++b) {
          double expect = (a == b && a < n) ? 1.0 : 0.0;
          if ((a == n && b == n + 1) || (a == n + 1 && b == n)) expect = -1.0;
          table = std::max(table, std::abs(minkowski_dot(all[a], all[b]) - expect));
        }
      Mat diag = -Mat::Identity(n, n);
      diag(0, 0) = 0.0;
      atheta = std::max(atheta, max_abs(shape_operator(h, f, f.theta) - diag));
      axial = std::max(axial, (Vec::Unit(n + 2, n + 1) - f.e[0] + f.alpha * f.theta).norm());
      for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b)
          if (a != b) offdiag = std::max(offdiag, h(a, b).cwiseAbs().maxCoeff());
      h11 = std::max(h11, std::abs(minkowski_norm2(h(0, 0))));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Verdict v;
  v.require(fams.size() >= 5 && min_samples >= 100, "too few families or samples");
  v.require(table < 1e-6, "pairing table " + sci(table));
  v.require(atheta < 1e-6, "A_theta " + sci(atheta));
  v.require(axial < 1e-6, "axial split " + sci(axial));
  v.require(offdiag < 1e-8, "h(e_a,e_b) " + sci(offdiag));
  v.require(h11 < 1e-8, "<h11,h11> " + sci(h11));
  v.require(secs < 30.0, "runtime " + sci(secs) + " s");
  v.detail = std::to_string(fams.size()) + " families x >= " + std::to_string(min_samples) + " samples; table " +
             sci(table) + ", A_theta " + sci(atheta) + ", axial " + sci(axial) + " (< 1e-6); h_ab " + sci(offdiag) +
             ", <h11,h11> " + sci(h11) + " (< 1e-8); " + sci(secs) + " s" + (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion2() {
  std::vector<ImmersionSpec> specs;
  for (const auto& [name, spec] : frame_families()) specs.push_back(spec);
  specs.push_back(gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0.0, 2.0}));
  specs.push_back(gen_cone_surface("2 + sin(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}));
  specs.push_back(gen_isotropic(4, 1, 1.0));
  double gauss = 0, codazzi = 0, ricci = 0;
  int samples = 0;
  for (const auto& spec : specs) {
    const JetField field = jet_field(spec);
    const std::vector<int> grid(static_cast<size_t>(spec.n_params), spec.n_params == 2 ? 5 : 2);
    for (const auto& p : interior_samples(spec, grid)) {
      const auto r = structure_residuals(field, p);
      gauss = std::max(gauss, r.gauss);
      codazzi = std::max(codazzi, r.codazzi);
      ricci = std::max(ricci, r.ricci);
      ++samples;
    }
  }
  double control = std::numeric_limits<double>::infinity();
  // curved examples only: on a flat surface h = 0 with vanishing Christoffel symbols is consistent data
  for (const auto& spec : {gen_cone_surface("cosh(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}),
                           gen_cone_surface("2 + sin(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}),
                           gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0})}) {
    JetField field = jet_field(spec);
    const auto inner = field.eval;
    field.eval = [inner](const Eigen::VectorXd& u) {
      Jet2 j = inner(u);
      j.second.setZero();
      return j;
    };
    for (const auto& p : interior_samples(spec, std::vector<int>(static_cast<size_t>(spec.n_params), 2))) {
      const auto r = structure_residuals(field, p);
      control = std::min(control, std::max(r.gauss, r.codazzi));
    }
  }
  Verdict v;
  v.require(gauss < 1e-4 && codazzi < 1e-4 && ricci < 1e-4, "residual above 1e-4");
  v.require(control > 1e-2, "negative control too small");
  v.detail = std::to_string(samples) + " samples; gauss " + sci(gauss) + ", codazzi " + sci(codazzi) + ", ricci " +
             sci(ricci) + " (< 1e-4); corrupted-jet min " + sci(control) + " (> 1e-2)" +
             (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion3() {
  Verdict v;
  AnalysisOptions opt;
  opt.residuals = false;
  auto reports = [&](const ImmersionSpec& spec, const std::vector<int>& grid) {
    std::vector<InvariantReport> out;
    for (const auto& p : interior_samples(spec, grid)) out.push_back(analyze_point(jet_field(spec), p, opt));
    return out;
  };
  bool any_umbilical = false;
  int samples = 0;

  for (const auto& r : reports(gen_pseudo_umbilical_surface(1.0), {10, 10})) {
    const Flags& f = r.flags;
    v.require(f.pseudo_umbilical.route_a && f.pseudo_umbilical.route_b && f.isotropic.route_a && f.isotropic.route_b &&
                  f.flat->value && f.flat_normal_bundle.value && f.marginally_trapped && f.a_h_zero,
              "pseudo-umbilical surface predicate false");
    any_umbilical |= f.totally_umbilical;
    ++samples;
  }
  double lambda = 0, ah = 0;
  for (int n : {3, 4})
    for (const auto& r : reports(gen_isotropic(n, 1, 1.0), std::vector<int>(static_cast<size_t>(n), 3))) {
      const Flags& f = r.flags;
      lambda = std::max(lambda, std::abs(f.isotropy_lambda) + f.isotropy_spread);
      ah = std::max(ah, f.a_h_norm);
      v.require(f.isotropic.value && f.pseudo_umbilical.value && f.marginally_trapped, "isotropic predicate false");
      any_umbilical |= f.totally_umbilical;
      ++samples;
    }
  v.require(lambda < 1e-6, "isotropy lambda " + sci(lambda));
  v.require(ah < 1e-5, "|A_H| " + sci(ah));
  double k = 0;
  for (const char* a : {"0", "sin(t)", "t"})
    for (const auto& r : reports(gen_ruled_flat(a, kappa_half_curve(), {1.5, 3.0}, {0.0, 2 * kPi}), {10, 10})) {
      k = std::max(k, std::abs(*r.K));
      any_umbilical |= r.flags.totally_umbilical;
      ++samples;
    }
  v.require(k < 1e-6, "ruled K " + sci(k));
  double alpha = 0;
  for (const auto& r : reports(gen_product(kappa_half_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}), {10, 10})) {
    alpha = std::max(alpha, std::abs(r.frame.alpha));
    any_umbilical |= r.flags.totally_umbilical;
    ++samples;
  }
  v.require(alpha < 1e-8, "product alpha " + sci(alpha));
  for (const auto& spec : {gen_example61(), gen_cone_surface("2 + s*t", circle_curve(), {-0.5, 0.5}, {0.0, 2.0}),
                           gen_pseudo_umbilical_n(4, -1, 1.0, {1.0, 0.0}, {0.0, 1.0})})
    for (const auto& r : reports(spec, std::vector<int>(static_cast<size_t>(spec.n_params), spec.n_params == 2 ? 10 : 3))) {
      any_umbilical |= r.flags.totally_umbilical;
      ++samples;
    }
  v.require(!any_umbilical, "totally umbilical flag raised");
  v.detail = "isotropy lambda " + sci(lambda) + " (< 1e-6), |A_H| " + sci(ah) + " (< 1e-5), ruled K " + sci(k) +
             " (< 1e-6), product alpha " + sci(alpha) + " (< 1e-8), totally umbilical never on " +
             std::to_string(samples) + " samples" + (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const OdeSolution lin = solve_alpha_hat_ode(3, -1, 1.0, {1.0, 1.0}, {0.0, 2.0});
  double exact = 0;
  for (const auto& g : lin.grid) exact = std::max(exact, std::abs(g.a - (1 + g.s)));
  v.require(!lin.stopped_early && lin.grid.back().s == 2.0, "linear solve stopped early");
  v.require(exact < 1e-8, "linear " + sci(exact));

  double rel = 0;
  int points = 0;
  for (int n : {3, 4}) {
    OdeSolution sol;
    const ImmersionSpec spec = gen_pseudo_umbilical_n(n, -1, 1.0, {1.0, 0.0}, {0.0, 1.0}, &sol);
    const Spline ah = sol.interpolant();
    const JetField field = jet_field(spec);
    std::vector<int> grid(static_cast<size_t>(n), 1);
    grid[0] = 20;
    for (const auto& p : interior_samples(spec, grid)) {
      const AdaptedFrame f = build_adapted_frame(field, p);
      const auto a = ah.evaluate(p(0));
      const double beta = alpha_hat_beta(-1, 1.0, a[0], a[1]);
      for (double b : f.beta) rel = std::max(rel, std::abs(b - beta));
      rel = std::max(rel, pseudo_umbilical_conditions(f));
      ++points;
    }
  }
  v.require(rel < 1e-5, "beta relation " + sci(rel));
  v.detail = "alpha-hat = 1 + s to " + sci(exact) + " (< 1e-8); IVP (1,0), n = 3 and 4: beta relation " + sci(rel) +
             " (< 1e-5) at " + std::to_string(points) + " points" + (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto kap = [](double) { return -0.5; };
  const CurveOnCone c = integrate_lc2_curve(kap, kappa_half_initial(), 0.0, 2 * kPi);
  const double r = 1 / std::sqrt(2.0);
  double closed = 0, drift = 0, krec = 0;
  for (const auto& s : c.samples) {
    // ((cos t + 1)/2) v1 + (1 - cos t) v2 + sin t v3
    Vec g(3);
    const double a = (std::cos(s.t) + 1) / 2, b = 1 - std::cos(s.t);
    g << r * (a + b), std::sin(s.t), r * (a - b);
    closed = std::max(closed, (s.gamma - g).cwiseAbs().maxCoeff());
    drift = std::max(drift, curve_constraints(s.gamma, s.gamma_prime, s.eta).max());
  }
  for (const auto& [t, k] : recompute_kappa(c)) krec = std::max(krec, std::abs(k + 0.5));
  v.require(closed < 1e-6, "closed form " + sci(closed));
  v.require(drift < 1e-6, "drift " + sci(drift));
  v.require(krec < 1e-6, "kappa " + sci(krec));
  v.detail = "closed form " + sci(closed) + ", drift " + sci(drift) + ", recomputed kappa " + sci(krec) + " (< 1e-6)" +
             (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion6() {
  Verdict v;
  double worst = 0;
  int samples = 0;
  for (const auto& spec : {gen_cone_surface("2 + sin(s)", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}),
                           gen_cone_surface("cosh(s)*(1.5 + 0.2*cos(t))", circle_curve(), {-1.0, 1.0}, {0.0, 2 * kPi}),
                           gen_cone_surface("2 + s*t", kappa_half_curve(), {-0.5, 0.5}, {0.0, 2.0}),
                           gen_pseudo_umbilical_surface(1.0), gen_example61(),
                           gen_ruled_flat("sin(t)", kappa_half_curve(), {1.5, 3.0}, {0.0, 2 * kPi}),
                           gen_product(kappa_half_curve(), {-1.0, 1.0}, {0.0, 2 * kPi})}) {
    const JetField field = jet_field(spec);
    for (const auto& p : interior_samples(spec, {6, 6})) {
      const auto r = structure_residuals(field, p);
      worst = std::max(worst, std::abs(*r.k_closed - *r.k_intrinsic));
      ++samples;
    }
  }
  v.require(worst < 1e-3, "K mismatch " + sci(worst));
  v.detail = "|K_extrinsic - K_intrinsic| " + sci(worst) + " (< 1e-3) on " + std::to_string(samples) + " samples" +
             (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion7() {
  Verdict v;
  lightcyl::testing::RandomExpr gen(20261016);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  double jet = 0, trip = 0;
  for (int k = 0; k < 100; ++k) {
    const ImmersionSpec spec = parse_immersion_spec(lightcyl::testing::scalar_spec(gen()));
    const ImmersionSpec again = parse_immersion_spec(print_immersion_spec(spec));
    for (int p = 0; p < 3; ++p) {
      const double s = d(rng), t = d(rng);
      const double u[2] = {s, t};
      const auto f = [&](double a, double b) {
        const double w[2] = {a, b};
        return evaluate_point(spec, w)(0);
      };
      jet = std::max(jet, lightcyl::testing::jet_deviation(eval_expr_jet(*spec.components[0], spec, u),
                                                           lightcyl::testing::richardson_jet(f, s, t)));
      const double x = f(s, t), y = evaluate_point(again, u)(0);
      trip = std::max(trip, std::abs(x - y) / std::max(1.0, std::abs(x)));
    }
  }
  const std::vector<std::string> malformed = {
      "map [s+]",
      "params s, t;\nambient 4;\nmap [s, t, s*, 0]",
      "params s, t;\nambient 4;\nmap [s, t, s, 0",
      "params s, t;\nambient 4;\nmap [s, t, q, 0]",
      "params s, t;\nambient 4;\nmap [sin(s, t), t, s, 0]",
      "params s, t;\nambient 4;\nmap [s $ t, t, s, 0]",
      "params s, t;\nambient 4;\nmap [s, t, s]",
      "params s, t;\nambient 5;\nmap [s, t, s, 0, 0]",
      "params s, s;\nambient 4;\nmap [s, s, s, 0]",
      "params s, t;\nambient 4;\ndomain s in [2, 1];\nmap [s, t, s, 0]",
      "params s, t;\nambient 4;\nmap [s^t, t, s, 0]",
      "params s, t;\nambient 4 light;\nmap [s, t, s, 0]",
      "params s, t;\nambient 4;\nconst k = s;\nmap [k, t, s, 0]",
      "params s;\nambient 3;\nspline f = [0, 1, 0, 0; 0, 2, 0, 0];\nmap [f(s), s, 0]",
      "",
  };
  int positioned = 0;
  for (const auto& text : malformed) {
    try {
      parse_immersion_spec(text);
    } catch (const ParseError& e) {
      const std::string prefix = std::to_string(e.line()) + ":" + std::to_string(e.column()) + ":";
      if (e.line() >= 1 && e.column() >= 1 && std::string(e.what()).rfind(prefix, 0) == 0) ++positioned;
    } catch (...) {
    }
  }
  v.require(jet < 1e-7, "jet " + sci(jet));
  v.require(trip < 1e-14, "round trip " + sci(trip));
  v.require(positioned == static_cast<int>(malformed.size()), "unpositioned errors");
  v.detail = "100 expressions: jet vs Richardson " + sci(jet) + " (< 1e-7 rel), round trip " + sci(trip) +
             " (< 1e-14); positioned errors " + std::to_string(positioned) + "/" + std::to_string(malformed.size()) +
             (v.pass ? "" : " -- " + v.detail);
  return v;
}

Verdict criterion8() {
  Verdict v;
  using lightcyl::testing::run_cli;
  const auto dir = std::filesystem::temp_directory_path() / ("lightcyl_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string spec = (dir / "pu.lc").string();
  v.require(run_cli("generate pseudo_umbilical_surface -o " + spec).exit_code == 0, "generate failed");
  const auto v1 = run_cli("verify");
  const auto v2 = run_cli("verify");
  const auto a1 = run_cli("analyze " + spec + " --grid 16x16");
  const auto a2 = run_cli("analyze " + spec + " --grid 16x16");
  const auto c1 = run_cli("analyze " + spec + " --grid 16x16 --format csv");
  const auto c2 = run_cli("analyze " + spec + " --grid 16x16 --format csv");
  v.require(v1.exit_code == 0 && a1.exit_code == 0 && c1.exit_code == 0, "non-zero exit");
  v.require(!v1.out.empty() && v1.out == v2.out, "verify output differs");
  v.require(!a1.out.empty() && a1.out == a2.out, "analyze json differs");
  v.require(!c1.out.empty() && c1.out == c2.out, "analyze csv differs");
  std::filesystem::remove_all(dir);
  v.detail = "verify " + std::to_string(v1.out.size()) + " bytes, analyze json " + std::to_string(a1.out.size()) +
             " bytes, csv " + std::to_string(c1.out.size()) + " bytes; identical across runs" +
             (v.pass ? "" : " -- " + v.detail);
  return v;
}

}  // namespace

int main() {
  report(1, "frame identities on generator families", criterion1);
  report(2, "Gauss, Codazzi and Ricci residuals with negative control", criterion2);
  report(3, "classification round trips", criterion3);
  report(4, "warping ODE closure", criterion4);
  report(5, "null curve integration", criterion5);
  report(6, "extrinsic vs intrinsic Gaussian curvature", criterion6);
  report(7, "parser and jet", criterion7);
  report(8, "determinism of verify and analyze", criterion8);
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
