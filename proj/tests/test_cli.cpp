#include "stratobs/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace stratobs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("stratobs_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"stratobs"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  return cli::main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const std::string& path) { return Json::parse(slurp(path)); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("simulate writes readable snapshots") {
  TempDir d;
  REQUIRE(run_cli({"simulate", "--modes", "8", "--times", "0,1", "--seed", "4", "--out", d.path.string()}) == cli::kOk);
  const Json s0 = load(d / "snapshot_0.json");
  CHECK(s0["format_version"] == 1);
  CHECK(s0["generator"]["tool"] == "stratobs");
  CHECK(s0["generator"]["config"]["seed"] == 4);
  const auto v = snapshot_from_json(s0);
  CHECK(v.size() == 8);
  CHECK(v.time == 0.0);
  const auto v1 = snapshot_from_json(load(d / "snapshot_1.json"));
  CHECK(v1.time == 1.0);
  // Re-serializing the parsed snapshot reproduces the body.
  CHECK(snapshot_to_json(v).dump() == snapshot_to_json(snapshot_from_json(snapshot_to_json(v))).dump());

  TempDir e;
  REQUIRE(run_cli({"simulate", "--modes", "8", "--times", "0,1", "--seed", "4", "--out", e.path.string()}) == cli::kOk);
  for (const char* f : {"snapshot_0.json", "snapshot_1.json", "initial_position.json", "initial_velocity.json"})
    CHECK(slurp(d / f) == slurp(e / f));

  TempDir p;
  REQUIRE(run_cli({"simulate", "--system", "plate", "--plate", "pi,pi", "--modes", "4x4", "--times", "0,0.5", "--out",
                   p.path.string()}) == cli::kOk);
  const Json pj = load(p / "snapshot_0.json");
  CHECK(pj["modes"] == Json::array({4, 4}));
  const auto pv = snapshot_from_json(pj);
  CHECK(pv.layout.plate);
  CHECK(pv.size() == 16);
  CHECK(snapshot_to_json(pv).dump() == snapshot_to_json(snapshot_from_json(snapshot_to_json(pv))).dump());
}

TEST_CASE("certify pipeline") {
  TempDir d;
  REQUIRE(run_cli({"certify", "--gap", "quad:(1+1*sqrt(5))/2", "--orders", "1,0", "--kmax", "500", "--out",
                   d.path.string()}) == cli::kOk);
  CHECK(load(d / "certificate.json")["verdict"] == "certified-all-k");
  const auto rows = lines(slurp(d / "certificate.csv"));
  REQUIRE(rows.size() == 501);
  CHECK(rows[0] == "k,distance,scaled_floor");

  TempDir r;
  REQUIRE(run_cli({"certify", "--gap", "rat:1/3", "--kmax", "10", "--out", r.path.string()}) == cli::kOk);
  CHECK(load(r / "certificate.json")["verdict"] == "refuted");
  const auto rr = lines(slurp(r / "certificate.csv"));
  CHECK(rr[3].rfind("3,0,0", 0) == 0);

  TempDir b;
  REQUIRE(run_cli({"certify", "--system", "beam", "--gap", "quad:(1+1*sqrt(5))/2", "--orders", "2,0", "--kmax", "300",
                   "--out", b.path.string()}) == cli::kOk);
  CHECK(load(b / "certificate.json")["verdict"] == "certified-all-k");

  TempDir again;
  REQUIRE(run_cli({"certify", "--gap", "quad:(1+1*sqrt(5))/2", "--orders", "1,0", "--kmax", "500", "--out",
                   again.path.string()}) == cli::kOk);
  CHECK(slurp(d / "certificate.json") == slurp(again / "certificate.json"));
  CHECK(slurp(d / "certificate.csv") == slurp(again / "certificate.csv"));
}

TEST_CASE("simulate then reconstruct") {
  TempDir d;
  REQUIRE(run_cli({"simulate", "--modes", "32", "--gap", "quad:(-1+1*sqrt(5))/2", "--seed", "7", "--out",
                   d.path.string()}) == cli::kOk);
  TempDir r;
  REQUIRE(run_cli({"reconstruct", d / "snapshot_0.json", d / "snapshot_1.json", "--reference",
                   d / "initial_position.json" + "," + d / "initial_velocity.json", "--out", r.path.string()}) ==
          cli::kOk);
  const auto rows = lines(slurp(r / "report.csv"));
  REQUIRE(rows.size() == 33);
  CHECK(rows[0] == "k,abs_det,cond,err_a,err_b");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::vector<std::string> f;
    for (std::string x; std::getline(in, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 5);
    CHECK(std::stod(f[3]) < 1e-12);
    CHECK(std::stod(f[4]) < 1e-12);
  }
  const Json rep = load(r / "report.json");
  CHECK(rep["singular_modes"].empty());
}

TEST_CASE("exit codes") {
  TempDir d;
  // Rational gap: mode 3 singular, partial report written.
  REQUIRE(run_cli({"simulate", "--modes", "6", "--gap", "rat:1/3", "--out", d.path.string()}) == cli::kOk);
  TempDir r;
  CHECK(run_cli({"reconstruct", d / "snapshot_0.json", d / "snapshot_1.json", "--out", r.path.string()}) ==
        cli::kSingular);
  CHECK(fs::exists(r / "report.json"));

  std::ofstream(d / "broken.json") << "{ \"format_version\": 1, ";
  CHECK(run_cli({"reconstruct", d / "broken.json", d / "snapshot_1.json", "--out", r.path.string()}) == cli::kIo);
  CHECK(run_cli({"reconstruct", d / "missing.json", d / "snapshot_1.json", "--out", r.path.string()}) == cli::kIo);

  CHECK(run_cli({"construct", "--q", "5", "--tau", "1", "--delta", "0", "--out", r.path.string()}) ==
        cli::kValidation);
  CHECK(run_cli({"construct", "--q", "0", "--out", r.path.string()}) == cli::kValidation);
  CHECK(run_cli({"certify", "--gap", "not-a-number", "--out", r.path.string()}) == cli::kValidation);
  CHECK(run_cli({"certify", "--out", r.path.string()}) == cli::kValidation);
  CHECK(run_cli({"frobnicate"}) == cli::kValidation);
  CHECK(run_cli({"certify", "--gap", "rat:1/3", "--bogus-flag", "1"}) == cli::kValidation);
  CHECK(run_cli({"simulate", "--system", "string", "--modes", "3x3", "--times", "0,1", "--out", r.path.string()}) ==
        cli::kValidation);
}

TEST_CASE("construct writes certificates") {
  TempDir d;
  REQUIRE(run_cli({"construct", "--q", "5", "--tau", "1", "--delta", "0.01", "--out", d.path.string()}) == cli::kOk);
  const Json c = load(d / "gap_certificate.json");
  CHECK(c["branch"] == "integer-q-perturbed");
  CHECK(c["tau_prime_over_pi"]["num"] == "889");
  CHECK(c["tau_prime_over_pi"]["den"] == "2816");

  TempDir e;
  REQUIRE(run_cli({"construct", "--q", "7/2", "--tau", "2", "--delta", "0.1", "--out", e.path.string()}) == cli::kOk);
  CHECK(load(e / "gap_certificate.json")["branch"] == "rational-q-reduced");

  TempDir f;
  REQUIRE(run_cli({"construct", "--q", "10", "--gap", "quad:(-1+1*sqrt(5))/2", "--nmax", "40", "--kmax", "500",
                   "--out", f.path.string()}) == cli::kOk);
  CHECK(load(f / "loaded_gap.json")["n"].get<int>() > 0);
}

TEST_CASE("scan writes the sensitivity profile") {
  TempDir d;
  REQUIRE(run_cli({"scan", "--gap", "quad:(-1+1*sqrt(5))/2", "--modes", "64", "--sigma", "1e-6", "--trials", "2",
                   "--out", d.path.string()}) == cli::kOk);
  const auto rows = lines(slurp(d / "sensitivity.csv"));
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == "k,factor,bound");
  CHECK(load(d / "scan.json").contains("noise"));
}

TEST_CASE("output directory falls back to the environment") {
  TempDir d;
  ::setenv(cli::kOutDirEnv, d.path.string().c_str(), 1);
  const int code = run_cli({"certify", "--gap", "rat:2/5", "--kmax", "20"});
  ::unsetenv(cli::kOutDirEnv);
  CHECK(code == cli::kOk);
  CHECK(fs::exists(d / "certificate.json"));
}
