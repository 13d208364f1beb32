#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lightcyl/analysis.hpp"
#include "lightcyl/export.hpp"
#include "lightcyl/generators.hpp"
#include "lightcyl/suite.hpp"

namespace {

using namespace lightcyl;

constexpr int kExitRan = 0;
constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string grid = "16";
  std::string domain;
  double tol_alg = Tolerances{}.algebraic;
  double tol_class = Tolerances{}.classification;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  int threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

Tolerances tolerances(const Common& c) {
  Tolerances t;
  t.algebraic = c.tol_alg;
  t.classification = c.tol_class;
  return t;
}

AnalysisReport run_analysis(const std::string& spec_path, const Common& c) {
  const std::string text = read_file(spec_path);
  const ImmersionSpec spec = parse_immersion_spec(text);
  AnalysisOptions opt;
  opt.tol = tolerances(c);
  opt.seed = c.seed;
  AnalysisReport r = analyze_spec(spec, parse_grid(c.grid, spec.n_params), parse_domain_overrides(c.domain, spec), opt,
                                  c.threads);
  r.fingerprint = fingerprint(text);
  return r;
}

void add_common(CLI::App* cmd, Common& c, bool grid) {
  if (grid) {
    cmd->add_option("--grid", c.grid, "nodes per axis, AxB[xC...] or a single count")->capture_default_str();
    cmd->add_option("--domain", c.domain, "override parameter ranges, name=lo:hi[,name=lo:hi]");
    cmd->add_option("--threads", c.threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--tol-alg", c.tol_alg, "tolerance for pointwise algebraic identities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol-class", c.tol_class, "tolerance for predicates that use outer differencing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for the isotropy direction sample")->capture_default_str();
  cmd->add_option("--out,-o", c.out, "output file (default: stdout)");
}

std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string family_usage() {
  std::ostringstream os;
  os << "families (key=value defaults):\n";
  for (const auto& f : generator_families()) os << "  " << f.name << "  " << f.parameters << "\n      " << f.description << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical invariants of codimension-two submanifolds of the light-like hypercylinder"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  const char* env_config = std::getenv("LIGHTCYL_CONFIG");
  app.set_config("--config", env_config ? env_config : "", "TOML/INI file with option defaults");

  Common c;
  std::string spec_path;
  std::string family;
  std::vector<std::string> assignments;

  auto* analyze = app.add_subcommand("analyze", "invariants and classification flags on a parameter grid");
  analyze->add_option("spec", spec_path, "immersion DSL file")->required();
  add_common(analyze, c, true);
  analyze->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify, c, false);
  verify->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* generate = app.add_subcommand("generate", "write the DSL spec of a built-in family");
  generate->add_option("family", family, "family name")->required();
  generate->add_option("params", assignments, "key=value overrides");
  generate->add_option("--out,-o", c.out, "output file (default: stdout)");
  generate->footer(family_usage());

  auto* exportc = app.add_subcommand("export", "export a grid as mesh, csv or json");
  exportc->add_option("spec", spec_path, "immersion DSL file")->required();
  add_common(exportc, c, true);
  exportc->add_option("--format", c.format, "mesh, csv or json")->required()->check(CLI::IsMember({"mesh", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitRan : kExitUsage;
  }

  try {
    if (*verify) {
      SuiteOptions opt;
      opt.tol = tolerances(c);
      opt.seed = c.seed;
      const SuiteResult r = run_verification_suite(opt);
      write_output(c.out, c.format == "json" ? suite_json(r, opt).dump(2) + "\n" : suite_text(r));
      return r.all_passed() ? kExitRan : kExitFailures;
    }
    if (*generate) {
      const ImmersionSpec spec = generate_family(family, parse_assignments(assignments));
      write_output(c.out, print_immersion_spec(spec));
      return kExitRan;
    }
    if (*analyze) {
      const AnalysisReport r = run_analysis(spec_path, c);
      write_output(c.out, c.format == "csv" ? report_csv(r) : report_json_text(r));
      return kExitRan;
    }
    if (*exportc) {
      if (c.format == "mesh") {
        const ImmersionSpec spec = parse_immersion_spec(read_file(spec_path));
        const Mesh m = export_mesh(spec, parse_grid(c.grid, spec.n_params), parse_domain_overrides(c.domain, spec));
        if (c.out.empty() || c.out == "-") throw UsageError("mesh export needs --out (the x1 sidecar goes next to it)");
        write_output(c.out, m.obj);
        write_output(c.out + ".x1", m.sidecar);
        return kExitRan;
      }
      const AnalysisReport r = run_analysis(spec_path, c);
      write_output(c.out, c.format == "csv" ? report_csv(r) : report_json_text(r));
      return kExitRan;
    }
  } catch (const ParseError& e) {
    std::cerr << "lightcyl: parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "lightcyl: " << e.what() << "\n";
    if (*generate) std::cerr << family_usage();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "lightcyl: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
