#include "lightcyl/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "lightcyl/generators.hpp"

namespace lightcyl {

namespace {

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json dual_json(const DualFlag& f) {
  return Json{{"value", f.value},         {"route_a", f.route_a},     {"route_b", f.route_b},
              {"measure_a", f.measure_a}, {"measure_b", f.measure_b}, {"consistent", f.consistent()}};
}

/// Named boolean predicates used for the aggregate verdicts.
std::vector<std::pair<std::string, bool>> node_predicates(const NodeResult& n) {
  std::vector<std::pair<std::string, bool>> p;
  if (n.report) {
    const Flags& f = n.report->flags;
    p = {{"pseudo_umbilical", f.pseudo_umbilical.value},
         {"flat_normal_bundle", f.flat_normal_bundle.value},
         {"isotropic", f.isotropic.value},
         {"marginally_trapped", f.marginally_trapped},
         {"minimal", f.minimal},
         {"totally_umbilical", f.totally_umbilical},
         {"alpha_zero", f.alpha_zero},
         {"a_h_zero", f.a_h_zero},
         {"inconsistent", f.inconsistent()}};
    if (f.flat) p.insert(p.begin() + 3, {"flat", f.flat->value});
  } else if (n.cone) {
    const auto& c = *n.cone;
    const int m = static_cast<int>(c.A_eta.rows());
    const double eta_defect = (c.A_eta - (c.A_eta.trace() / m) * Mat::Identity(m, m)).cwiseAbs().maxCoeff();
    const double gamma_defect = (c.A_gamma + Mat::Identity(m, m)).cwiseAbs().maxCoeff();
    p = {{"umbilical_eta", eta_defect < 1e-8}, {"a_gamma_minus_identity", gamma_defect < 1e-8}};
  }
  return p;
}

std::string verdict(std::size_t yes, std::size_t total) {
  if (total > 0 && yes == total) return "all";
  if (yes == 0) return "none";
  return "mixed";
}

Json node_json(const NodeResult& n) {
  Json j;
  j["index"] = n.index;
  j["point"] = vector_json(n.point);
  j["status"] = n.status;
  if (!n.message.empty()) j["message"] = n.message;
  if (n.report) {
    const InvariantReport& r = *n.report;
    j["alpha"] = r.frame.alpha;
    j["beta"] = r.frame.beta;
    j["e1_alpha"] = r.frame.e1_alpha;
    j["ea_alpha"] = r.frame.ea_alpha;
    j["product_type"] = r.frame.product_type;
    j["H"] = Json{{"theta", r.mean.h_theta},
                  {"xi", r.mean.h_xi},
                  {"norm2", r.mean.norm2},
                  {"causal", std::string(to_string(r.mean.causal))}};
    if (r.K) j["K"] = *r.K;
    if (r.K_perp) j["K_perp"] = *r.K_perp;
    j["A_theta"] = matrix_json(r.A_theta);
    j["A_xi"] = matrix_json(r.A_xi);
    j["A_H"] = matrix_json(r.mean.A_H);
    if (r.residuals) {
      Json res;
      for (const auto& [k, v] : r.residuals->entries()) res[k] = v;
      if (r.residuals->k_intrinsic) res["k_intrinsic"] = *r.residuals->k_intrinsic;
      j["residuals"] = res;
    }
    const Flags& f = r.flags;
    Json fl;
    fl["pseudo_umbilical"] = dual_json(f.pseudo_umbilical);
    fl["flat_normal_bundle"] = dual_json(f.flat_normal_bundle);
    fl["isotropic"] = dual_json(f.isotropic);
    if (f.flat) fl["flat"] = dual_json(*f.flat);
    fl["isotropy_lambda"] = f.isotropy_lambda;
    fl["isotropy_spread"] = f.isotropy_spread;
    fl["marginally_trapped"] = f.marginally_trapped;
    fl["minimal"] = f.minimal;
    fl["totally_umbilical"] = f.totally_umbilical;
    fl["alpha_zero"] = f.alpha_zero;
    fl["a_h_zero"] = f.a_h_zero;
    if (f.surface_equivalences_agree) fl["surface_equivalences_agree"] = *f.surface_equivalences_agree;
    fl["inconsistent"] = f.inconsistent();
    j["flags"] = fl;
  } else if (n.cone) {
    j["cone_residual"] = n.cone->cone_residual;
    j["A_gamma"] = matrix_json(n.cone->A_gamma);
    j["A_eta"] = matrix_json(n.cone->A_eta);
  }
  return j;
}

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(bool b) { return b ? "1" : "0"; }

}  // namespace

Json report_json(const AnalysisReport& rep) {
  Json j;
  j["tool"] = "lightcyl";
  j["version"] = rep.version;
  j["spec_fingerprint"] = rep.fingerprint;
  j["mode"] = rep.mode == AmbientMode::Cone ? "cone" : "cylinder";
  const Tolerances& t = rep.options.tol;
  j["tolerances"] = Json{{"causal", t.causal},       {"symmetry", t.symmetry},   {"gram", t.gram},
                         {"cylinder", t.cylinder},   {"algebraic", t.algebraic}, {"classification", t.classification},
                         {"difference_step", rep.options.diff.step_scale}};
  j["seed"] = rep.options.seed;
  j["directions"] = rep.options.directions;
  Json grid;
  grid["params"] = rep.param_names;
  grid["counts"] = rep.counts;
  Json dom = Json::array();
  for (const auto& iv : rep.domain) dom.push_back(Json::array({iv.lo, iv.hi}));
  grid["domain"] = dom;
  grid["nodes"] = "cell-centred";
  j["grid"] = grid;

  // aggregate
  std::size_t admissible = 0;
  std::vector<std::string> names;
  std::vector<std::size_t> yes;
  std::map<std::string, double> worst;
  std::vector<std::string> worst_order;
  for (const auto& n : rep.nodes) {
    if (!n.admissible()) continue;
    ++admissible;
    const auto preds = node_predicates(n);
    for (const auto& [name, v] : preds) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        names.push_back(name);
        yes.push_back(0);
        it = names.end() - 1;
      }
      if (v) ++yes[static_cast<size_t>(it - names.begin())];
    }
    if (n.report && n.report->residuals) {
      for (const auto& [k, v] : n.report->residuals->entries()) {
        if (!worst.count(k)) {
          worst[k] = 0.0;
          worst_order.push_back(k);
        }
        worst[k] = std::max(worst[k], v);
      }
    }
  }
  Json agg;
  agg["nodes"] = rep.nodes.size();
  agg["admissible_nodes"] = admissible;
  agg["admissible"] = verdict(admissible, rep.nodes.size());
  Json flags;
  for (size_t i = 0; i < names.size(); ++i) flags[names[i]] = verdict(yes[i], admissible);
  agg["flags"] = flags;
  Json mr = Json::object();
  for (const auto& k : worst_order) mr[k] = worst[k];
  agg["max_residuals"] = mr;
  j["aggregate"] = agg;

  Json nodes = Json::array();
  for (const auto& n : rep.nodes) nodes.push_back(node_json(n));
  j["nodes"] = nodes;
  return j;
}

std::string report_json_text(const AnalysisReport& report) { return report_json(report).dump(2) + "\n"; }

std::vector<std::string> csv_columns(const std::vector<std::string>& params) {
  std::vector<std::string> cols;
  for (const auto& p : params) cols.push_back("i_" + p);
  for (const auto& p : params) cols.push_back(p);
  for (const char* c :
       {"status", "alpha", "e1_alpha", "ea_alpha_max", "beta_min", "beta_max", "H_theta", "H_xi", "H_norm2",
        "H_causal", "K", "K_perp", "A_H_norm", "isotropy_lambda", "isotropy_spread", "pseudo_umbilical",
        "flat_normal_bundle", "isotropic", "flat", "marginally_trapped", "totally_umbilical", "alpha_zero",
        "inconsistent", "res_gauss", "res_codazzi", "res_ricci", "res_frame_b", "res_frame_d", "res_frame_e"})
    cols.emplace_back(c);
  return cols;
}

std::string report_csv(const AnalysisReport& rep) {
  std::ostringstream os;
  const auto cols = csv_columns(rep.param_names);
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& n : rep.nodes) {
    std::vector<std::string> row;
    for (int i : n.index) row.push_back(std::to_string(i));
    for (int i = 0; i < n.point.size(); ++i) row.push_back(cell(n.point(i)));
    row.push_back(n.status);
    if (n.report) {
      const InvariantReport& r = *n.report;
      double ea = 0.0;
      for (double v : r.frame.ea_alpha) ea = std::max(ea, std::abs(v));
      row.push_back(cell(r.frame.alpha));
      row.push_back(cell(r.frame.e1_alpha));
      row.push_back(cell(ea));
      row.push_back(cell(*std::min_element(r.frame.beta.begin(), r.frame.beta.end())));
      row.push_back(cell(*std::max_element(r.frame.beta.begin(), r.frame.beta.end())));
      row.push_back(cell(r.mean.h_theta));
      row.push_back(cell(r.mean.h_xi));
      row.push_back(cell(r.mean.norm2));
      row.emplace_back(to_string(r.mean.causal));
      row.push_back(r.K ? cell(*r.K) : "");
      row.push_back(r.K_perp ? cell(*r.K_perp) : "");
      const Flags& f = r.flags;
      row.push_back(cell(f.a_h_norm));
      row.push_back(cell(f.isotropy_lambda));
      row.push_back(cell(f.isotropy_spread));
      row.push_back(cell(f.pseudo_umbilical.value));
      row.push_back(cell(f.flat_normal_bundle.value));
      row.push_back(cell(f.isotropic.value));
      row.push_back(f.flat ? cell(f.flat->value) : "");
      row.push_back(cell(f.marginally_trapped));
      row.push_back(cell(f.totally_umbilical));
      row.push_back(cell(f.alpha_zero));
      row.push_back(cell(f.inconsistent()));
      if (r.residuals) {
        const auto& s = *r.residuals;
        for (double v : {s.gauss, s.codazzi, s.ricci, s.frame_b, s.frame_d, s.frame_e}) row.push_back(cell(v));
      } else {
        for (int i = 0; i < 6; ++i) row.emplace_back();
      }
    } else {
      while (row.size() < cols.size()) row.emplace_back();
    }
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

Mesh export_mesh(const ImmersionSpec& spec, const std::vector<int>& counts, const std::vector<Interval>& domain) {
  if (spec.n_params != 2) throw DimensionError("mesh export needs a surface (two parameters)");
  if (counts.size() != 2 || domain.size() != 2) throw DimensionError("mesh export: grid must have two axes");
  if (counts[0] < 2 || counts[1] < 2) throw UsageError("mesh export needs at least two vertices per axis");
  for (const auto& iv : domain)
    if (!iv.bounded()) throw UsageError("mesh export needs a bounded domain");
  const auto us = sample_interval(domain[0], counts[0]);
  const auto vs = sample_interval(domain[1], counts[1]);
  Mesh m;
  std::ostringstream obj, side;
  obj << "# lightcyl mesh: vertices (x2, x3, x4); x1 in sidecar\n";
  for (double u : us)
    for (double v : vs) {
      const double p[2] = {u, v};
      const Eigen::VectorXd x = evaluate_point(spec, p);
      obj << "v " << cell(x(1)) << " " << cell(x(2)) << " " << cell(x(3)) << "\n";
      side << cell(x(0)) << "\n";
      ++m.vertices;
    }
  const int B = counts[1];
  for (int i = 0; i + 1 < counts[0]; ++i)
    for (int j = 0; j + 1 < B; ++j) {
      const int a = i * B + j + 1;
      obj << "f " << a << " " << a + B << " " << a + B + 1 << " " << a + 1 << "\n";
      ++m.faces;
    }
  m.obj = obj.str();
  m.sidecar = side.str();
  return m;
}

}  // namespace lightcyl
