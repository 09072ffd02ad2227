#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "binzeros");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = binzeros::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("binzeros_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("zeros of B_{1,9}") {
  const Result r = run({"zeros", "--r", "1", "--n", "9", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("re,im,residual\n-1.1111111111", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
}

TEST_CASE("zeros of (1+z)^3 flag the multiplicity") {
  const Result r = run({"zeros", "--r", "3", "--n", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["zeros"].size() == 3);
  CHECK(r.err.find("multiplicity 3") != std::string::npos);
}

TEST_CASE("zeros output is deterministic and written atomically") {
  const fs::path dir = scratch_dir("zeros");
  const fs::path a = dir / "a.json";
  const fs::path b = dir / "b.json";
  CHECK(run({"zeros", "--r", "10", "--n", "30", "--out", a.string()}).code == 0);
  CHECK(run({"zeros", "--r", "10", "--n", "30", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::json::parse(slurp(a))["zeros"].size() == 10);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().filename().string().find(".tmp-") == std::string::npos);
}

TEST_CASE("precision flag and environment override") {
  CHECK(nlohmann::json::parse(run({"zeros", "--r", "2", "--n", "4", "--precision-bits", "300"}).out)["precision_bits"] ==
        300);
  ::setenv("BINZEROS_PRECISION", "200", 1);
  const Result env = run({"zeros", "--r", "2", "--n", "4"});
  ::unsetenv("BINZEROS_PRECISION");
  CHECK(nlohmann::json::parse(env.out)["precision_bits"] == 200);
  CHECK(nlohmann::json::parse(run({"zeros", "--r", "2", "--n", "4"}).out)["precision_bits"] == 128);
  CHECK(run({"zeros", "--r", "2", "--n", "4", "--precision-bits", "20"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"zeros", "--r", "5"}).code == 2);
  CHECK(run({"zeros", "--r", "0", "--n", "5"}).code == 2);
  CHECK(run({"zeros", "--r", "7", "--n", "5"}).code == 2);
  CHECK(run({"zeros", "--r", "1", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(run({"curve", "--alpha", "1.5"}).code == 2);
  CHECK(run({"figure", "4"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify reports the region and names the hypothesis") {
  const Result ok = run({"verify", "--r", "10", "--n", "30"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["passed"] == true);
  const Result bad = run({"verify", "--r", "5", "--n", "6"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("1 <= r < n-1") != std::string::npos);
  CHECK(bad.out.empty());
}

TEST_CASE("failed validation leaves no output file") {
  const fs::path dir = scratch_dir("noout");
  const fs::path target = dir / "report.json";
  CHECK(run({"verify", "--r", "5", "--n", "6", "--out", target.string()}).code == 2);
  CHECK_FALSE(fs::exists(target));
  CHECK(fs::is_empty(dir));
}

TEST_CASE("curve command") {
  const Result r = run({"curve", "--alpha", "1/3", "--points", "64", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("theta,re,im,residual\n0,5.000000", 0) == 0);
  const Result o = run({"curve", "--alpha", "0.25", "--branch", "outer", "--points", "32"});
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out)["branch"] == "outer");
}

TEST_CASE("sweep command") {
  const Result r = run({"sweep", "--alpha", "0.3333", "--ns", "30,90", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,r,sup_distance,rate_statistic,singular_gap\n30,10,", 0) == 0);
  CHECK(r.out.find("\n90,30,") != std::string::npos);
  CHECK(run({"sweep", "--alpha", "0.01", "--ns", "30"}).code == 2);
}

TEST_CASE("szego command") {
  const Result r = run({"szego", "--r", "10", "--n", "1000"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["rescaled"].size() == 10);
}

TEST_CASE("halfline command reports both deviations") {
  const Result r = run({"halfline", "--ns", "20,40"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["strict_halfplane"] == true);
  CHECK(j["records"].size() == 2);
  CHECK(j["records"][0].contains("window_deviation"));
  CHECK(r.code == (j["passed"] == true ? 0 : 1));
}

TEST_CASE("figure 1 layers") {
  const fs::path dir = scratch_dir("fig1");
  const Result r = run({"figure", "1", "--out", dir.string()});
  CHECK(r.code == 0);
  for (const char* name : {"fig1_zeros.csv", "fig1_curve.csv", "fig1_circle_outer.csv", "fig1_circle_gamma.csv"}) {
    CHECK(fs::exists(dir / name));
  }
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 4);
  // The zero layer is exactly the zeros command output.
  CHECK(slurp(dir / "fig1_zeros.csv") == run({"zeros", "--r", "10", "--n", "30", "--format", "csv"}).out);
  const std::string outer = slurp(dir / "fig1_circle_outer.csv");
  CHECK(outer.find("\n0,4.761904761904761904761904761904761904") != std::string::npos);
}

TEST_CASE("figure 3 layers") {
  const fs::path dir = scratch_dir("fig3");
  CHECK(run({"figure", "3", "--out", dir.string()}).code == 0);
  const std::string pts = slurp(dir / "fig3_points.csv");
  CHECK(pts.rfind("p,theta,re,im\n1,", 0) == 0);
  CHECK(std::count(pts.begin(), pts.end(), '\n') == 40);
  const std::string zeros = slurp(dir / "fig3_zeros.csv");
  CHECK(std::count(zeros.begin(), zeros.end(), '\n') == 41);
}
