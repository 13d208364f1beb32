#include "lightcyl/generators.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "lightcyl/errors.hpp"

namespace lightcyl {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return x < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

std::string raw_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string domain_line(const std::string& name, Interval iv) {
  return "domain " + name + " in [" + num(iv.lo) + ", " + num(iv.hi) + "];\n";
}

/// Unit sphere S^{m-1} in R^m by angles names[0..m-2]; the first m-2 are polar, the last azimuthal.
std::vector<std::string> sphere(const std::vector<std::string>& names) {
  const size_t m = names.size() + 1;
  std::vector<std::string> out;
  std::string prefix;
  for (size_t i = 0; i < m; ++i) {
    std::string c;
    if (i + 1 < m) {
      c = prefix.empty() ? "cos(" + names[i] + ")" : prefix + "*cos(" + names[i] + ")";
      prefix = prefix.empty() ? "sin(" + names[i] + ")" : prefix + "*sin(" + names[i] + ")";
    } else {
      c = prefix;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> angle_names(int n) {
  std::vector<std::string> v;
  for (int i = 2; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

std::string angle_domains(int n) {
  std::string out;
  for (int i = 2; i < n; ++i) out += "domain t" + std::to_string(i) + " in [0.3, pi - 0.3];\n";
  out += "domain t" + std::to_string(n) + " in [0, 2*pi];\n";
  return out;
}

struct CurveText {
  std::string header;  // spline statements
  std::array<std::string, 3> components;
  Interval domain;
};

CurveText curve_text(const CurveSource& src) {
  CurveText ct;
  if (const auto* cf = std::get_if<ClosedFormCurve>(&src)) {
    for (int i = 0; i < 3; ++i) ct.components[static_cast<size_t>(i)] = "(" + cf->components[static_cast<size_t>(i)] + ")";
    ct.domain = cf->domain;
    return ct;
  }
  const auto& cv = std::get<CurveOnCone>(src);
  if (cv.samples.size() < 2) throw PreconditionError("integrated curve has fewer than two samples");
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << "spline g" << i + 1 << " = [\n";
    for (size_t k = 0; k < cv.samples.size(); ++k) {
      const auto& s = cv.samples[k];
      const double kap = cv.kappa_fn(s.t);
      const double second = kap * s.gamma(i) + s.eta(i);
      os << "  " << raw_num(s.t) << ", " << raw_num(s.gamma(i)) << ", " << raw_num(s.gamma_prime(i)) << ", "
         << raw_num(second) << (k + 1 < cv.samples.size() ? ";\n" : "\n");
    }
    os << "];\n";
    ct.components[static_cast<size_t>(i)] = "g" + std::to_string(i + 1) + "(t)";
  }
  ct.header = os.str();
  ct.domain = {cv.samples.front().t, cv.samples.back().t};
  return ct;
}

void require_inside(Interval inner, Interval outer, const std::string& what) {
  if (!(inner.lo >= outer.lo && inner.hi <= outer.hi))
    throw PreconditionError(what + " interval [" + raw_num(inner.lo) + ", " + raw_num(inner.hi) +
                            "] exceeds the curve range [" + raw_num(outer.lo) + ", " + raw_num(outer.hi) + "]");
}

void require_bounded(Interval iv, const std::string& what) {
  if (!iv.bounded() || !(iv.lo < iv.hi)) throw PreconditionError(what + " interval must be bounded and non-empty");
}

/// Requires phi_1 > 0 on a grid over the (s, t) rectangle; for (f gamma, s) this is f > 0.
void require_positive_profile(const ImmersionSpec& spec, const std::string& what) {
  const auto ss = sample_interval(spec.param_domain[0], 33);
  const auto ts = sample_interval(spec.param_domain[1], 33);
  for (double s : ss)
    for (double t : ts) {
      const double u[2] = {s, t};
      const Eigen::VectorXd v = evaluate_point(spec, u);
      if (!(v(0) > 0.0)) {
        std::ostringstream os;
        os << what << " is not positive at (s, t) = (" << s << ", " << t << ")";
        throw DomainError(os.str());
      }
    }
}

ImmersionSpec surface_over_curve(const std::string& profile, const CurveSource& curve, Interval s, Interval t,
                                 const std::string& consts, const std::string& what) {
  require_bounded(s, "s");
  require_bounded(t, "t");
  const CurveText ct = curve_text(curve);
  require_inside(t, ct.domain, "t");
  std::ostringstream os;
  os << "params s, t;\nambient 4;\n" << consts << ct.header << domain_line("s", s) << domain_line("t", t) << "map [\n";
  for (int i = 0; i < 3; ++i) os << "  (" << profile << ")*" << ct.components[static_cast<size_t>(i)] << ",\n";
  os << "  s\n];\n";
  ImmersionSpec spec = parse_immersion_spec(os.str());
  require_positive_profile(spec, what);
  return spec;
}

double parse_value(const std::string& key, const std::string& text) {
  try {
    return evaluate_constant_expression(text);
  } catch (const Error& e) {
    throw UsageError("parameter " + key + "=" + text + ": " + e.what());
  }
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_value(key, text);
  if (std::floor(v) != v) throw UsageError("parameter " + key + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> sample_interval(Interval iv, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(iv.lo + (iv.hi - iv.lo) * i / (count - 1));
  return out;
}

ClosedFormCurve circle_curve() {
  return {"circle", {"1", "cos(t)", "sin(t)"}, {}};
}

ClosedFormCurve kappa_half_curve() {
  return {"kappa_half", {"(3 - cos(t))/(2*sqrt2)", "sin(t)", "(3*cos(t) - 1)/(2*sqrt2)"}, {}};
}

CurveInitial kappa_half_initial() {
  const double r = 1.0 / std::sqrt(2.0);
  CurveInitial c;
  c.gamma = Vec(3);
  c.gamma << r, 0.0, r;
  c.gamma_prime = Vec(3);
  c.gamma_prime << 0.0, 1.0, 0.0;
  c.eta = Vec(3);
  c.eta << r, 0.0, -r;
  return c;
}

ImmersionSpec gen_sigma_tau(int n, double tau) {
  if (n < 3) throw DimensionError("gen_sigma_tau: requires n >= 3");
  if (!(tau > 0.0)) throw PreconditionError("gen_sigma_tau: tau must be positive");
  const auto names = angle_names(n);
  std::ostringstream os;
  os << "params ";
  for (size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  os << ";\nambient " << n + 1 << " cone;\nconst tau = " << raw_num(tau) << ";\n" << angle_domains(n) << "map [\n  tau";
  for (const auto& c : sphere(names)) os << ",\n  tau*" << c;
  os << "\n];\n";
  return parse_immersion_spec(os.str());
}

ImmersionSpec gen_ruled_flat(const std::string& a_expr, const CurveSource& curve, Interval s, Interval t) {
  return surface_over_curve("s + (" + a_expr + ")", curve, s, t, "", "s + a(t)");
}

ImmersionSpec gen_cone_surface(const std::string& ahat_expr, const CurveSource& curve, Interval s, Interval t) {
  return surface_over_curve(ahat_expr, curve, s, t, "", "profile");
}

ImmersionSpec gen_pseudo_umbilical_surface(double c1, Interval s, Interval t) {
  require_bounded(s, "s");
  require_bounded(t, "t");
  if (!(s.lo + c1 > 0.0)) throw DomainError("gen_pseudo_umbilical_surface: s + c1 must stay positive");
  std::ostringstream os;
  os << "params s, t;\nambient 4;\nconst c1 = " << raw_num(c1) << ";\n"
     << domain_line("s", s) << domain_line("t", t)
     << "map [\n"
        "  -(s + c1)*(cos(t) - 3)/(2*sqrt2),\n"
        "  (s + c1)*sin(t),\n"
        "  (s + c1)*(3*cos(t) - 1)/(2*sqrt2),\n"
        "  s\n];\n";
  return parse_immersion_spec(os.str());
}

ImmersionSpec gen_isotropic(int n, int eps, double c0, Interval s) {
  if (n <= 2) throw DimensionError("gen_isotropic: requires n > 2");
  if (eps != 1 && eps != -1) throw PreconditionError("gen_isotropic: eps must be +1 or -1");
  require_bounded(s, "s");
  if (!(eps * s.lo + c0 > 0.0 && eps * s.hi + c0 > 0.0))
    throw DomainError("gen_isotropic: eps s + c0 must stay positive on the s interval");
  const auto names = angle_names(n);
  std::ostringstream os;
  os << "params s";
  for (const auto& a : names) os << ", " << a;
  os << ";\nambient " << n + 2 << ";\nconst eps = " << eps << ";\nconst c0 = " << raw_num(c0) << ";\n"
     << domain_line("s", s) << angle_domains(n) << "map [\n  (eps*s + c0)";
  for (const auto& c : sphere(names)) os << ",\n  (eps*s + c0)*" << c;
  os << ",\n  s\n];\n";
  return parse_immersion_spec(os.str());
}

ImmersionSpec gen_pseudo_umbilical_n(int n, int c, double tau, std::pair<double, double> ivp, Interval s,
                                     OdeSolution* solution) {
  if (n <= 2) throw DimensionError("gen_pseudo_umbilical_n: requires n > 2");
  if (c != -1) throw PreconditionError("gen_pseudo_umbilical_n: only the c = -1 base chart is available");
  require_bounded(s, "s");
  OdeSolution sol = solve_alpha_hat_ode(n, c, tau, ivp, {s.lo, s.hi});
  if (sol.stopped_early) {
    std::ostringstream os;
    os << "warping function reaches zero near s = " << sol.stop_s << " inside [" << s.lo << ", " << s.hi << "]";
    throw BlowDownError(os.str(), sol.stop_s);
  }
  const auto names = angle_names(n);
  std::ostringstream os;
  os << "params s";
  for (const auto& a : names) os << ", " << a;
  os << ";\nambient " << n + 2 << ";\nconst tau = " << raw_num(tau) << ";\nspline ahat = [\n";
  for (size_t k = 0; k < sol.grid.size(); ++k) {
    const auto& g = sol.grid[k];
    os << "  " << raw_num(g.s) << ", " << raw_num(g.a) << ", " << raw_num(g.da) << ", " << raw_num(g.dda)
       << (k + 1 < sol.grid.size() ? ";\n" : "\n");
  }
  os << "];\n" << domain_line("s", s) << angle_domains(n) << "map [\n  tau*ahat(s)";
  for (const auto& comp : sphere(names)) os << ",\n  tau*ahat(s)*" << comp;
  os << ",\n  s\n];\n";
  if (solution) *solution = std::move(sol);
  return parse_immersion_spec(os.str());
}

ImmersionSpec gen_product(const CurveSource& curve, Interval s, Interval t) {
  return surface_over_curve("1", curve, s, t, "", "curve time component");
}

ImmersionSpec gen_example61(Interval s, Interval t) {
  require_bounded(s, "s");
  require_bounded(t, "t");
  if (!(s.lo > 0.0)) throw DomainError("gen_example61: s must be positive");
  std::ostringstream os;
  os << "params s, t;\nambient 4;\n" << domain_line("s", s) << domain_line("t", t)
     << "map [\n  s,\n  s/sqrt(t^2 + 1),\n  s*t/sqrt(t^2 + 1),\n  s\n];\n";
  return parse_immersion_spec(os.str());
}

const std::vector<FamilyInfo>& generator_families() {
  static const std::vector<FamilyInfo> fams = {
      {"sigma_tau", "n=3 tau=1", "totally umbilical slice of the light cone (cone mode)"},
      {"ruled_flat", "a=0 curve=circle kappa=-0.5 s_lo=0.5 s_hi=2.5 t_lo=0 t_hi=2*pi",
       "flat ruled surface ((s + a(t)) gamma(t), s)"},
      {"cone_surface", "ahat=2+sin(s) curve=circle kappa=-0.5 s_lo=-1 s_hi=1 t_lo=0 t_hi=2*pi",
       "surface (ahat(s,t) gamma(t), s) over a null curve"},
      {"pseudo_umbilical_surface", "c1=1 s_lo=0 s_hi=2 t_lo=0 t_hi=2*pi", "closed-form pseudo-umbilical surface"},
      {"isotropic", "n=3 eps=1 c0=1 s_lo=0 s_hi=2", "isotropic submanifold over the unit hypersphere"},
      {"pseudo_umbilical_n", "n=4 c=-1 tau=1 a0=1 da0=0 s_lo=0 s_hi=0.5",
       "pseudo-umbilical submanifold from the warping ODE"},
      {"product", "curve=kappa_half kappa=-0.5 s_lo=-1 s_hi=1 t_lo=0 t_hi=2*pi", "product of a null curve and a line"},
      {"example61", "s_lo=0.5 s_hi=2 t_lo=-1 t_hi=1", "pseudo-umbilical surface in the hyperplane x1 = x4"},
  };
  return fams;
}

ImmersionSpec generate_family(const std::string& family, const std::map<std::string, std::string>& params) {
  const FamilyInfo* info = nullptr;
  for (const auto& f : generator_families())
    if (f.name == family) info = &f;
  if (!info) throw UsageError("unknown family '" + family + "'");

  std::map<std::string, std::string> values;
  std::istringstream defaults(info->parameters);
  std::string kv;
  while (defaults >> kv) {
    const auto eq = kv.find('=');
    values[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const auto& [k, v] : params) {
    if (!values.count(k)) throw UsageError("family '" + family + "' has no parameter '" + k + "'");
    values[k] = v;
  }
  auto real = [&](const std::string& k) { return parse_value(k, values.at(k)); };
  auto integer = [&](const std::string& k) { return parse_int(k, values.at(k)); };
  auto curve = [&]() -> CurveSource {
    const std::string& name = values.at("curve");
    if (name == "circle") return circle_curve();
    if (name == "kappa_half") return kappa_half_curve();
    if (name == "integrated") {
      const double kap = real("kappa");
      const Interval t{real("t_lo"), real("t_hi")};
      if (t.lo < 0.0 || !(t.hi > 0.0)) throw UsageError("integrated curves start at t = 0; need 0 <= t_lo < t_hi");
      return integrate_lc2_curve([kap](double) { return kap; }, kappa_half_initial(), 0.0, t.hi, 1e-10,
                                 static_cast<int>(std::ceil(t.hi / 0.02)) + 1);
    }
    throw UsageError("curve must be circle, kappa_half or integrated");
  };

  try {
    if (family == "sigma_tau") return gen_sigma_tau(integer("n"), real("tau"));
    const Interval s{real("s_lo"), real("s_hi")};
    if (family == "isotropic") return gen_isotropic(integer("n"), integer("eps"), real("c0"), s);
    if (family == "pseudo_umbilical_n")
      return gen_pseudo_umbilical_n(integer("n"), integer("c"), real("tau"), {real("a0"), real("da0")}, s);
    const Interval t{real("t_lo"), real("t_hi")};
    if (family == "ruled_flat") return gen_ruled_flat(values.at("a"), curve(), s, t);
    if (family == "cone_surface") return gen_cone_surface(values.at("ahat"), curve(), s, t);
    if (family == "pseudo_umbilical_surface") return gen_pseudo_umbilical_surface(real("c1"), s, t);
    if (family == "product") return gen_product(curve(), s, t);
    return gen_example61(s, t);
  } catch (const ParseError& e) {
    throw UsageError(std::string("family '") + family + "': " + e.what());
  }
}

}  // namespace lightcyl
