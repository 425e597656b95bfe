#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("irmtk_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

CmdResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(IRMTK_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CmdResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("mr emits the uniform closed-form rows") {
  const auto r = run_cli("mr --dist '{\"type\":\"uniform\",\"m\":4}' --j 1..3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "j,mr_king,mr_flajolet,discrepancy\n"
        "1,0.75,0.75,0\n"
        "2,0.5,0.5,0\n"
        "3,0.25,0.25,0\n");
}

TEST_CASE("json output re-parses to the same values") {
  const auto r = run_cli(
      "mr --dist '{\"type\":\"explicit\",\"weights\":[5,3,2]}' --j 0..3 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("m") == 3);
  REQUIRE(doc.at("entries").size() == 4);
  CHECK(doc["entries"][0]["mr_king"] == 1.0);
  CHECK(doc["entries"][1]["mr_king"].get<double>() == 0.62);
  CHECK(doc["entries"][3]["mr_king"] == 0.0);

  // serialize -> parse -> serialize must be a fixed point
  const auto again = nlohmann::json::parse(doc.dump());
  CHECK(again == doc);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(again["entries"][i]["mr_flajolet"].get<double>() ==
          doc["entries"][i]["mr_flajolet"].get<double>());
}

TEST_CASE("ccp curve row for the uniform harmonic value") {
  const auto r = run_cli("ccp --dist '{\"type\":\"uniform\",\"m\":3}' --j 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("j,e_layers,e_symmetric,e_ferrante,delta_e\n") == 0);
  CHECK(r.out.find("\n3,5.5,5.5,") != std::string::npos);
}

TEST_CASE("ccp json leaves inapplicable columns null") {
  const auto r = run_cli(
      "ccp --dist '{\"type\":\"explicit\",\"weights\":[5,3,2]}' --j 0..3 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("entries").size() == 4);
  CHECK(doc["entries"][0]["e_layers"] == 0.0);
  CHECK(doc["entries"][0]["e_symmetric"].is_null());
  CHECK(doc["entries"][0]["e_ferrante"].is_null());
  CHECK(doc["entries"][3]["delta_e"].is_null());
  CHECK(doc["entries"][1]["e_layers"] == 1.0);
}

TEST_CASE("rational mode zeroes the discrepancy column") {
  const auto r = run_cli(
      "mr --dist '{\"type\":\"uniform\",\"m\":4}' --j 1..3 --rational --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "j,mr_king,mr_flajolet,discrepancy\n"
        "1,0.75,0.75,0\n"
        "2,0.5,0.5,0\n"
        "3,0.25,0.25,0\n");

  const auto c = run_cli(
      "ccp --dist '{\"type\":\"uniform\",\"m\":3}' --j 0..3 --rational --format json");
  REQUIRE(c.exit_code == 0);
  const auto doc = nlohmann::json::parse(c.out);
  CHECK(doc["entries"][3]["e_layers"] == 5.5);
  CHECK(doc["entries"][3]["e_symmetric"] == 5.5);

  // rational tables are capped at m = 12
  CHECK(run_cli("mr --dist '{\"type\":\"uniform\",\"m\":13}' --rational").exit_code == 2);
}

TEST_CASE("verify exits 0 on sound input") {
  const auto r = run_cli(
      "verify --dist '{\"type\":\"explicit\",\"weights\":[5,3,2]}' --jmax 2 --tol 1e-10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verify: OK") != std::string::npos);
}

TEST_CASE("verify exits 1 when the tolerance is unmeetable") {
  const auto r = run_cli(
      "verify --dist '{\"type\":\"zipf\",\"m\":8,\"alpha\":1.0}' --jmax 7 --tol 1e-30");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("verify: FAIL") != std::string::npos);
}

TEST_CASE("verify --rational reports bit-exact equality") {
  const auto r = run_cli(
      "verify --dist '{\"type\":\"explicit\",\"weights\":[5,3,2]}' --rational");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rational j=1 identical ok") != std::string::npos);
  CHECK(r.out.find("rational j=2 identical ok") != std::string::npos);
}

TEST_CASE("usage and config errors exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("mr").exit_code == 2);  // --dist is required
  CHECK(run_cli("mr --dist '{\"type\":\"nope\"}'").exit_code == 2);
  CHECK(run_cli("mr --dist '{broken json'").exit_code == 2);
  CHECK(run_cli("mr --dist '{\"type\":\"uniform\",\"m\":4}' --j 9").exit_code == 2);
  CHECK(run_cli("mr --dist '{\"type\":\"uniform\",\"m\":4}' --j 2..x").exit_code == 2);
  CHECK(run_cli("mr --dist /nonexistent/dist.json").exit_code == 2);
  CHECK(run_cli("simulate --dist '{\"type\":\"uniform\",\"m\":4}' --mode bogus").exit_code == 2);
  CHECK(run_cli("verify --dist '{\"type\":\"uniform\",\"m\":4}' --tol -1").exit_code == 2);
  CHECK(run_cli("verify --dist '{\"type\":\"uniform\",\"m\":4}' --jmax 0").exit_code == 2);
  CHECK(run_cli("verify --dist '{\"type\":\"uniform\",\"m\":4}' --jmax 4").exit_code == 2);
  CHECK(run_cli("itable --dist '{\"type\":\"uniform\",\"m\":4}' --layer 5").exit_code == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("mr --help").exit_code == 0);
}

TEST_CASE("itable dumps the requested layer") {
  const auto r = run_cli("itable --dist '{\"type\":\"uniform\",\"m\":4}' --layer 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mask,size,q_J,I_J\n") == 0);
  CHECK(r.out.find("3,2,0.5,0.33333333333333331\n") != std::string::npos);
  // C(4,2) rows + header
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 7);
}

TEST_CASE("simulate reports the estimate beside the exact value") {
  const auto lru = run_cli(
      "simulate --dist '{\"type\":\"uniform\",\"m\":4}' --mode lru --capacity 2 "
      "--accesses 20000 --seed 7");
  CHECK(lru.exit_code == 0);
  CHECK(lru.out.find("mode,param,mean,std_error,samples,seed,exact,abs_error\n") == 0);
  CHECK(lru.out.find(",0.5,") != std::string::npos);  // exact column

  const auto ccp = run_cli(
      "simulate --dist '{\"type\":\"uniform\",\"m\":3}' --mode ccp --j 1 "
      "--trials 2000 --seed 9 --format json");
  CHECK(ccp.exit_code == 0);
  const auto doc = nlohmann::json::parse(ccp.out);
  CHECK(doc["mean"] == 1.0);
  CHECK(doc["std_error"] == 0.0);
  CHECK(doc["exact"] == 1.0);
}

TEST_CASE("relative --out paths resolve under IRMTK_OUT_DIR") {
  const fs::path dir = scratch_dir() / "outdir";
  fs::create_directories(dir);
  const std::string cmd = "IRMTK_OUT_DIR=" + dir.string() + " " + IRMTK_BIN +
                          " mr --dist '{\"type\":\"uniform\",\"m\":2}' --j 1 "
                          "--out curve.csv > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string written = slurp(dir / "curve.csv");
  CHECK(written.find("1,0.5,0.5,0\n") != std::string::npos);
}

TEST_CASE("a dist spec can come from a file") {
  const fs::path spec = scratch_dir() / "dist.json";
  std::ofstream(spec) << "{\"type\":\"geometric\",\"m\":8,\"ratio\":0.5}";
  const auto r = run_cli("mr --dist " + spec.string() + " --j 1..7");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 8);
}
