#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string(DDVV_CLI_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/ddvv_cli_test_") + std::to_string(getpid()) + "_" + name;
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::string path = temp_path(name);
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kPairDoc = R"({
  "n": 2, "m": 2, "kind": "symmetric",
  "matrices": [[[0,1],[1,0]], [[1,0],[0,-1]]]
})";

}  // namespace

TEST_CASE("check certifies the equality pair") {
  const std::string path = write_file("pair.json", kPairDoc);
  const CmdResult res = run_cli("check " + path);
  CHECK(res.code == 0);
  const json rep = json::parse(res.out);
  CHECK(rep["lhs"] == 16.0);
  CHECK(rep["rhs"] == 16.0);
  CHECK(rep["gap"] == 0.0);
  CHECK(rep["equality"] == true);
  REQUIRE(rep.contains("certificate"));
  CHECK(rep["certificate"]["kind"] == "wintgen-pair");
  CHECK(std::abs(rep["certificate"]["mu"].get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("reports round-trip through their input echo bit for bit") {
  const std::string path = write_file("pair_echo.json", kPairDoc);
  const CmdResult first = run_cli("check " + path);
  REQUIRE(first.code == 0);
  const json rep = json::parse(first.out);

  const std::string echo_path = write_file("pair_echo2.json", rep["input"].dump());
  const CmdResult second = run_cli("check " + echo_path);
  REQUIRE(second.code == 0);
  const json rep2 = json::parse(second.out);
  CHECK(rep2["gap"].dump() == rep["gap"].dump());
  CHECK(rep2["lhs"].dump() == rep["lhs"].dump());
  CHECK(rep2["rhs"].dump() == rep["rhs"].dump());
}

TEST_CASE("malformed input exits 2 with a position-bearing message") {
  const std::string path = write_file("broken.json", "{\"n\": 2, \"m\": ");
  const CmdResult res = run_cli("check " + path, /*merge_stderr=*/true);
  CHECK(res.code == 2);
  CHECK(res.out.find("parse error at line") != std::string::npos);

  const std::string mismatch = write_file(
      "mismatch.json", R"({"n":2,"m":1,"matrices":[[[1,0,0],[0,1,0],[0,0,1]]]})");
  CHECK(run_cli("check " + mismatch).code == 2);

  CHECK(run_cli("check /tmp/ddvv_no_such_file.json").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("antisymmetric and mixed kinds run through the same subcommand") {
  const std::string anti = write_file(
      "anti.json", R"({"n":3,"m":2,"kind":"antisymmetric","matrices":[
        [[0,1,0],[-1,0,2],[0,-2,0]], [[0,-3,1],[3,0,0],[-1,0,0]]]})");
  const CmdResult res = run_cli("check " + anti);
  CHECK(res.code == 0);
  const json rep = json::parse(res.out);
  CHECK(rep["gap"].get<double>() >= -1e-9 * std::max(1.0, rep["rhs"].get<double>()));

  const std::string mixed = write_file(
      "mixed.json", R"({"n":2,"m":3,"kind":"mixed","matrices":[
        [[1,0],[0,-1]], [[0,1],[1,0]], [[0,1],[-1,0]]]})");
  const CmdResult mres = run_cli("check " + mixed);
  CHECK(mres.code == 0);
  const json mrep = json::parse(mres.out);
  CHECK(mrep["gap"] == -12.0);

  // declared antisymmetric but is not
  const std::string lying = write_file(
      "lying.json", R"({"n":2,"m":1,"kind":"antisymmetric","matrices":[[[1,0],[0,1]]]})");
  CHECK(run_cli("check " + lying).code == 2);
}

TEST_CASE("batch checks keep input order and carry per-row errors") {
  json batch = json::array();
  for (int i = 0; i < 1000; ++i) {
    const double t = 1.0 + i * 0.001;
    batch.push_back(json::parse(std::string(R"({"n":2,"m":2,"matrices":
      [[[0,)") + std::to_string(t) + R"(],[)" + std::to_string(t) + R"(,0]],
        [[1,0],[0,-1]]]})"));
  }
  batch[500] = json{{"n", 2}, {"m", 2}, {"matrices", json::array()}};  // broken row

  const std::string path = write_file("batch.json", batch.dump());
  const CmdResult res = run_cli("check " + path + " --format csv");
  CHECK(res.code == 0);

  std::istringstream lines(res.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "index,n,m,kind,lhs,rhs,gap,equality,mu,residual,error");
  int row = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind(std::to_string(row) + ",", 0) == 0);
    if (row == 500) CHECK(line.find("matrices") != std::string::npos);
    ++row;
  }
  CHECK(row == 1000);

  // same batch as json: equality flags should reflect mu growth, row 0 is
  // the mu = 1 pair scaled variants, all still equality configurations
  const CmdResult jres = run_cli("check " + path);
  CHECK(jres.code == 0);
  const json jrep = json::parse(jres.out);
  REQUIRE(jrep["reports"].size() == 1000);
  CHECK(jrep["reports"][0]["equality"] == true);
  CHECK(jrep["reports"][500]["error_kind"] == "input");
}

TEST_CASE("geom reports umbilic and equality examples") {
  const std::string umbilic = write_file(
      "umbilic.json", R"({"n":3,"m":2,"matrices":[
        [[0.5,0,0],[0,0.5,0],[0,0,0.5]], [[-0.25,0,0],[0,-0.25,0],[0,0,-0.25]]]})");
  const CmdResult res = run_cli("geom " + umbilic + " --c 1");
  CHECK(res.code == 0);
  const json rep = json::parse(res.out);
  CHECK(std::abs(rep["gap"].get<double>()) <= 1e-12);
  CHECK(rep["wintgen"] == true);
  REQUIRE(rep.contains("frame"));
  CHECK(rep["frame"]["mu"] == 0.0);

  const std::string wintgen = write_file(
      "wintgen.json", R"({"n":2,"m":3,"matrices":[
        [[0,1],[1,0]], [[1,0],[0,-1]], [[0,0],[0,0]]]})");
  const CmdResult wres = run_cli("geom " + wintgen);
  CHECK(wres.code == 0);
  const json wrep = json::parse(wres.out);
  CHECK(std::abs(wrep["gap"].get<double>()) <= 1e-12);
  CHECK(wrep["rho"] == -2.0);
  CHECK(wrep["rho_perp"] == 2.0);
  CHECK(std::abs(wrep["frame"]["mu"].get<double>() - 1.0) <= 1e-9);

  const std::string generic = write_file(
      "generic.json", R"({"n":3,"m":1,"matrices":[[[1,0.2,0],[0.2,-1,0.4],[0,0.4,0.5]]]})");
  const CmdResult gres = run_cli("geom " + generic);
  CHECK(gres.code == 0);
  const json grep = json::parse(gres.out);
  CHECK(grep["gap"].get<double>() > 0.0);
  CHECK_FALSE(grep.contains("frame"));

  // shape operators must be symmetric
  const std::string lopsided = write_file(
      "lopsided.json", R"({"n":2,"m":1,"matrices":[[[0,1],[0,0]]]})");
  CHECK(run_cli("geom " + lopsided).code == 2);
}

TEST_CASE("search reports are byte-identical across runs and thread counts") {
  const std::string flags = "search --n 2 --restarts 6 --max-iters 60 --seed 42";
  const CmdResult a = run_cli(flags);
  const CmdResult b = run_cli(flags);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const CmdResult c = run_cli(flags + " --threads 2");
  REQUIRE(c.code == 0);
  CHECK(c.out == a.out);

  const json rep = json::parse(a.out);
  CHECK(rep["best_f"].get<double>() <= 1e-6);
  CHECK(rep["best_f"].get<double>() >= -1e-6);
  CHECK(rep["classification"]["pass"] == true);

  CHECK(run_cli("search --n 1").code == 2);
  CHECK(run_cli("search --n 9").code == 2);
}

TEST_CASE("demos tell their stories") {
  const CmdResult counter = run_cli("demo counterexample");
  CHECK(counter.code == 0);
  CHECK(counter.out.find("gap = -12") != std::string::npos);

  const CmdResult equality = run_cli("demo equality");
  CHECK(equality.code == 0);
  CHECK(equality.out.find("recovered mu") != std::string::npos);

  const CmdResult lemmas = run_cli("demo lemmas");
  CHECK(lemmas.code == 0);
  CHECK(lemmas.out.find("all bounds respected") != std::string::npos);

  CHECK(run_cli("demo nonsense").code == 2);
}
