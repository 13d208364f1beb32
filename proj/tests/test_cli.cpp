#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli_run.hpp"
#include "lightcyl/export.hpp"

using lightcyl::testing::run_cli;

namespace {

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / ("lightcyl_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST(Cli, VerifyPassesAndIsDeterministic) {
  const auto a = run_cli("verify");
  const auto b = run_cli("verify");
  EXPECT_EQ(a.exit_code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("0-isotropic"), std::string::npos);
  EXPECT_EQ(a.out.find("FAIL"), std::string::npos) << a.out;
}

TEST(Cli, VerifyTightToleranceExitsOne) {
  const auto r = run_cli("verify --tol-class 1e-14");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("FAIL  structure.gauss"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS  frame.A_theta"), std::string::npos) << r.out;
}

TEST(Cli, VerifyJson) {
  const auto r = run_cli("verify --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = lightcyl::Json::parse(r.out);
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_GT(j["checks"].size(), 30u);
}

TEST(Cli, GenerateAnalyzePseudoUmbilicalSurface) {
  const auto dir = scratch();
  const auto spec = dir / "pu.lc";
  ASSERT_EQ(run_cli("generate pseudo_umbilical_surface c1=1 --out " + spec.string()).exit_code, 0);
  const std::string text = slurp(spec);
  EXPECT_NE(text.find("-(s + c1)*(cos(t) - 3)/(2*sqrt2)"), std::string::npos) << text;
  EXPECT_NE(text.find("(s + c1)*sin(t)"), std::string::npos);
  EXPECT_NE(text.find("(s + c1)*(3*cos(t) - 1)/(2*sqrt2)"), std::string::npos);

  const auto a = run_cli("analyze " + spec.string() + " --grid 16x16");
  const auto b = run_cli("analyze " + spec.string() + " --grid 16x16");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = lightcyl::Json::parse(a.out);
  EXPECT_EQ(j["aggregate"]["flags"]["pseudo_umbilical"], "all");
  EXPECT_EQ(j["aggregate"]["nodes"], 256);
  EXPECT_EQ(j["spec_fingerprint"], lightcyl::fingerprint(text));
}

TEST(Cli, GenerateIsotropicReanalyzes) {
  const auto dir = scratch();
  const auto spec = dir / "iso.lc";
  ASSERT_EQ(run_cli("generate isotropic n=3 eps=1 c0=2 -o " + spec.string()).exit_code, 0);
  const auto r = run_cli("analyze " + spec.string() + " --grid 3x3x3");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = lightcyl::Json::parse(r.out);
  EXPECT_EQ(j["aggregate"]["flags"]["isotropic"], "all");
  EXPECT_EQ(j["aggregate"]["flags"]["pseudo_umbilical"], "all");
  EXPECT_EQ(j["aggregate"]["flags"]["marginally_trapped"], "all");
}

TEST(Cli, RuledFlatCsvHasZeroK) {
  const auto dir = scratch();
  const auto spec = dir / "ruled.lc";
  ASSERT_EQ(run_cli("generate ruled_flat \"a=sin(t)\" s_lo=1.5 s_hi=3 -o " + spec.string()).exit_code, 0);
  const auto csv = dir / "ruled.csv";
  ASSERT_EQ(run_cli("export " + spec.string() + " --format csv --grid 8x8 --out " + csv.string()).exit_code, 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  const auto cols = lightcyl::csv_columns({"s", "t"});
  const auto k = static_cast<size_t>(std::find(cols.begin(), cols.end(), "K") - cols.begin());
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (size_t i = 0; i <= k; ++i) std::getline(ss, cell, ',');
    EXPECT_LT(std::abs(std::stod(cell)), 1e-6);
    ++rows;
  }
  EXPECT_EQ(rows, 64);
}

TEST(Cli, MeshExport) {
  const auto dir = scratch();
  const auto spec = dir / "pu_mesh.lc";
  ASSERT_EQ(run_cli("generate pseudo_umbilical_surface -o " + spec.string()).exit_code, 0);
  const auto obj = dir / "pu.obj";
  ASSERT_EQ(run_cli("export " + spec.string() + " --format mesh --grid 32x64 --out " + obj.string()).exit_code, 0);
  const std::string text = slurp(obj);
  std::istringstream lines(text);
  std::string line;
  int vertices = 0, faces = 0;
  while (std::getline(lines, line)) {
    vertices += line.rfind("v ", 0) == 0;
    faces += line.rfind("f ", 0) == 0;
  }
  EXPECT_EQ(vertices, 2048);
  EXPECT_EQ(faces, 31 * 63);
  const std::string side = slurp(obj.string() + ".x1");
  EXPECT_EQ(std::count(side.begin(), side.end(), '\n'), 2048);

  const auto iso = dir / "iso_mesh.lc";
  ASSERT_EQ(run_cli("generate isotropic -o " + iso.string()).exit_code, 0);
  EXPECT_EQ(run_cli("export " + iso.string() + " --format mesh --out " + (dir / "x.obj").string()).exit_code, 2);
}

TEST(Cli, JsonExportRoundTrip) {
  const auto dir = scratch();
  const auto spec = dir / "ex.lc";
  ASSERT_EQ(run_cli("generate example61 -o " + spec.string()).exit_code, 0);
  const auto out = dir / "ex.json";
  ASSERT_EQ(run_cli("export " + spec.string() + " --format json --grid 6x6 --out " + out.string()).exit_code, 0);
  const std::string text = slurp(out);
  EXPECT_EQ(lightcyl::Json::parse(text).dump(2) + "\n", text);
}

TEST(Cli, OffConeSpecRunsWithNoAdmissibleNodes) {
  const auto dir = scratch();
  const auto spec = dir / "bad.lc";
  write(spec, "params s, t;\ndomain s in [1, 2];\ndomain t in [0, 1];\nambient 4;\nmap [2*s, s*cos(t), s*sin(t), t]\n");
  const auto r = run_cli("analyze " + spec.string() + " --grid 4x4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(lightcyl::Json::parse(r.out)["aggregate"]["admissible"], "none");
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  const auto dir = scratch();
  const auto bad = dir / "broken.lc";
  write(bad, "params s, t;\nambient 4;\nmap [s+, t, s, 0]\n");
  EXPECT_EQ(run_cli("analyze " + bad.string()).exit_code, 2);
  EXPECT_EQ(run_cli("analyze " + (dir / "missing.lc").string()).exit_code, 2);
  EXPECT_EQ(run_cli("generate torus").exit_code, 2);
  EXPECT_EQ(run_cli("generate isotropic radius=2").exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("verify --tol-alg -1").exit_code, 2);
  EXPECT_EQ(run_cli("export " + bad.string() + " --format svg").exit_code, 2);
  const auto good = dir / "good.lc";
  ASSERT_EQ(run_cli("generate example61 -o " + good.string()).exit_code, 0);
  EXPECT_EQ(run_cli("analyze " + good.string() + " --grid 3x3x3").exit_code, 2);
  EXPECT_EQ(run_cli("analyze " + good.string() + " --domain q=0:1").exit_code, 2);
}

TEST(Cli, ParseErrorMessageIsPositioned) {
  const auto dir = scratch();
  const auto bad = dir / "broken2.lc";
  write(bad, "params s, t;\nambient 4;\nmap [s+, t, s, 0]\n");
  const std::string cmd = std::string("\"") + LIGHTCYL_BIN + "\" analyze " + bad.string() + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[512] = {0};
  const size_t n = fread(buf, 1, sizeof buf - 1, p);
  pclose(p);
  EXPECT_NE(std::string(buf, n).find("3:8:"), std::string::npos) << buf;
}

TEST(Cli, ConfigFileFromEnvironment) {
  const auto dir = scratch();
  const auto cfg = dir / "lightcyl.toml";
  write(cfg, "[verify]\ntol-class = 1e-14\n");
  const auto r = run_cli("verify");
  EXPECT_EQ(r.exit_code, 0);
  const std::string cmd = "LIGHTCYL_CONFIG=" + cfg.string() + " \"" + LIGHTCYL_BIN + "\" verify >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
}
