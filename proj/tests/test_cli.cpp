#include "ncdirac/cli.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ncdirac;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
  Json doc() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("ncdirac_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST(CliUsage, BadSignIsUsageError) {
  const CliRun r = run({"--eps5", "0", "verify", "rep"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("eps5"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliUsage, BadParameters) {
  EXPECT_EQ(run({"--ell", "0", "modes"}).code, kExitUsage);
  EXPECT_EQ(run({"--ell", "abc", "modes"}).code, kExitUsage);
  EXPECT_EQ(run({"--vev", "-1", "seesaw"}).code, kExitUsage);
  EXPECT_EQ(run({"--order", "0", "verify", "planewave"}).code, kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "verify", "rep"}).code, kExitUsage);
  EXPECT_EQ(run({"verify"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"scan", "--param", "ell", "--from", "1", "--to", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"scan", "--param", "eps4", "--from", "1", "--to", "2", "--steps", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"--fixture", "x.json", "verify", "rep"}).code, kExitUsage);
  EXPECT_EQ(run({"--fixture", "/nonexistent/x.json", "verify", "algebra"}).code, kExitUsage);
}

TEST(CliUsage, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("scan"), std::string::npos);
}

TEST(CliVerify, AlgebraAllSigns) {
  const CliRun r = run({"--all-signs", "verify", "algebra"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json d = r.doc();
  EXPECT_EQ(d["command"], "verify algebra");
  EXPECT_EQ(d["status"], "pass");
  EXPECT_EQ(d["summary"]["failed"], 0);
  std::set<std::pair<int, int>> signs;
  for (const auto& rep : d["reports"]) {
    EXPECT_EQ(rep["status"], "pass");
    EXPECT_FALSE(rep.contains("duration_ms"));
    if (rep["check"] == "algebra.jacobi") signs.insert({rep["params"]["eps4"].get<int>(), rep["params"]["eps5"].get<int>()});
  }
  EXPECT_EQ(signs.size(), 4u);
}

TEST(CliVerify, ReportsAreSorted) {
  const Json d = run({"--all-signs", "verify", "clifford"}).doc();
  std::vector<std::string> keys;
  for (const auto& rep : d["reports"]) keys.push_back(rep["check"].get<std::string>() + "|" + rep["params"].dump());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(CliVerify, RepFamilies) {
  const Json d = run({"verify", "rep"}).doc();
  EXPECT_EQ(d["reports"].size(), 8u);
  for (const auto& rep : d["reports"]) EXPECT_EQ(rep["check"], "rep.closure");
}

TEST(CliVerify, Timings) {
  const Json d = run({"--timings", "verify", "clifford"}).doc();
  for (const auto& rep : d["reports"]) EXPECT_TRUE(rep.contains("duration_ms"));
}

TEST(CliFixture, BuiltInAlgebraRoundTrips) {
  TempDir dir;
  write(dir / "ok.json", algebra_to_json(build_deformed_algebra(-1, 1)).dump(1));
  const CliRun r = run({"--fixture", (dir / "ok.json").string(), "verify", "algebra"});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
}

TEST(CliFixture, TamperedConstantNamesTriple) {
  TempDir dir;
  Json j = algebra_to_json(build_deformed_algebra(1, -1));
  // double one coefficient of [P0, x0]
  bool changed = false;
  for (auto& b : j["brackets"]) {
    if (b["left"] == "P0" && b["right"] == "x0") {
      auto& t = b["value"][0]["terms"][0];
      t["re"] = Rational(2 * parse_rational(t["re"].get<std::string>())).get_str();
      t["im"] = Rational(2 * parse_rational(t["im"].get<std::string>())).get_str();
      changed = true;
    }
  }
  ASSERT_TRUE(changed);
  write(dir / "bad.json", j.dump());
  const CliRun r = run({"--fixture", (dir / "bad.json").string(), "verify", "algebra"});
  EXPECT_EQ(r.code, kExitFail);
  const Json d = r.doc();
  EXPECT_EQ(d["status"], "fail");
  bool named = false;
  for (const auto& rep : d["reports"]) {
    if (rep["check"] != "algebra.jacobi") continue;
    EXPECT_EQ(rep["status"], "fail");
    ASSERT_FALSE(rep["details"]["violations"].empty());
    for (const auto& v : rep["details"]["violations"]) {
      const auto t = v["triple"].get<std::vector<std::string>>();
      named = named || std::count(t.begin(), t.end(), "P0") || std::count(t.begin(), t.end(), "x0");
    }
  }
  EXPECT_TRUE(named);
}

TEST(CliFixture, MalformedIsUsageError) {
  TempDir dir;
  write(dir / "junk.json", "{\"basis\": [\"A\"]}");
  EXPECT_EQ(run({"--fixture", (dir / "junk.json").string(), "verify", "algebra"}).code, kExitUsage);
  write(dir / "notjson.json", "not json");
  EXPECT_EQ(run({"--fixture", (dir / "notjson.json").string(), "verify", "algebra"}).code, kExitUsage);
}

TEST(CliModes, HeavyRootsScaleWithEll) {
  const CliRun r = run({"--eps5", "-1", "--ell", "2", "modes"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json d = r.doc();
  bool seen = false;
  for (const auto& rep : d["reports"]) {
    if (rep["check"] != "modes.dispersion") continue;
    seen = true;
    EXPECT_NE(rep.dump().find("\"1\""), std::string::npos);
  }
  EXPECT_TRUE(seen);
}

TEST(CliSeesaw, SmallCouplingPasses) {
  const CliRun r = run({"--all-signs", "--g", "1", "--vev", "1/100", "seesaw"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.doc()["status"], "pass");
}

TEST(CliScan, RowsAndHeavyColumn) {
  const CliRun r = run({"scan", "--param", "ell", "--from", "1/2", "--to", "2", "--steps", "4"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json d = r.doc();
  ASSERT_EQ(d["rows"].size(), 4u);
  for (const auto& row : d["rows"]) {
    const Rational ell = parse_rational(row["ell"].get<std::string>());
    EXPECT_EQ(parse_rational(row["heavy_k2"].get<std::string>()), 4 / (ell * ell));
  }
}

TEST(CliScan, Csv) {
  const CliRun r = run({"--format", "csv", "scan", "--param", "vev", "--from", "0", "--to", "1/10", "--steps", "3"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("param,value,ell,g,vev,heavy_k2", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("vev,", 0), 0u);
  }
  EXPECT_EQ(rows, 3);
}

TEST(CliScan, NoRealRootsIsReportedPerRow) {
  // eps5 = +1 with M < 2 mu
  const CliRun r = run({"--eps5", "1", "--ell", "1", "--g", "1", "scan", "--param", "vev", "--from", "1/10", "--to", "2", "--steps", "2"});
  EXPECT_EQ(r.code, kExitFail);
  const Json d = r.doc();
  ASSERT_EQ(d["rows"].size(), 2u);
  EXPECT_EQ(d["rows"][0]["status"], "pass");
  EXPECT_EQ(d["rows"][1]["status"], "fail");
  EXPECT_FALSE(d["rows"][1]["error"].get<std::string>().empty());
}

TEST(CliOutput, OutFileAndCsvReports) {
  TempDir dir;
  const fs::path p = dir / "r.csv";
  const CliRun r = run({"--format", "csv", "--out", p.string(), "verify", "rep"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "check,params,status,residual,tolerance,anchor");
}

TEST(CliConfig, FileAndFlagPrecedence) {
  TempDir dir;
  write(dir / "run.toml", "eps5 = 1\nell = \"1/2\"\n");
  Json d = run({"--config", (dir / "run.toml").string(), "verify", "rep"}).doc();
  EXPECT_EQ(d["config"]["eps5"], 1);
  EXPECT_EQ(d["config"]["ell"], "1/2");
  d = run({"--config", (dir / "run.toml").string(), "--eps5", "-1", "verify", "rep"}).doc();
  EXPECT_EQ(d["config"]["eps5"], -1);
}

TEST(CliDeterminism, RepeatedRunsIdentical) {
  const CliRun a = run({"--seed", "7", "modes"});
  const CliRun b = run({"--seed", "7", "modes"});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  EXPECT_EQ(a.out, b.out);
}
