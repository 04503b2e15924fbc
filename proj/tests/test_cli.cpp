#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "pg3/extremal.hpp"

using json = nlohmann::json;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PG3_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("verify-lines hermitian q=4") {
  const auto r = run_cli("verify-lines --q 4 --kind hermitian --format json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["q"] == 4);
  CHECK(j["d"] == 3);
  CHECK(j["N"] == 45);
  CHECK(j["nu"] == 27);
  CHECK(j["eq_lines"] == true);
  CHECK(j["eq_points"] == true);
  CHECK(j["hypothesis_flags"]["plane_component_found"] == false);
}

TEST_CASE("count on the F_2 quadric") {
  const auto r = run_cli("count --q 2 --surface \"X0*X1 - X2*X3\"");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["N"] == 9);
  CHECK(j["nu"] == 6);
  CHECK(j["per_point_histogram"]["2"] == 9);
}

TEST_CASE("census q=2 d=2") {
  const auto r = run_cli("census --q 2 --degree 2");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["max_nu"] == 6);
  CHECK(j["violations"].empty());
  CHECK(j["total_forms"] == 1023);
}

TEST_CASE("exit codes distinguish refusals from usage errors") {
  CHECK(run_cli("verify-points --q 3 --surface \"X0*X1\"").exit_code == 2);
  // singular input: the report is emitted but the chain is not asserted
  const auto sing = run_cli("verify-lines --q 3 --surface \"X0*X1 - X2^2\"");
  CHECK(sing.exit_code == 2);
  CHECK(json::parse(sing.out)["hypothesis_flags"]["rational_singularity_found"] ==
        true);
  CHECK(run_cli("count --q 3 --surface \"X0 +\"").exit_code == 1);
  CHECK(run_cli("count --q 12 --surface \"X0^2\"").exit_code == 1);
  CHECK(run_cli("count --q 3").exit_code == 1);  // no surface given
  CHECK(run_cli("definitely-not-a-command").exit_code == 1);
  CHECK(run_cli("census --q 3 --degree 3 --budget 100").exit_code == 1);
  CHECK(run_cli("construct --q 5 --kind hermitian").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("construct output round-trips through the parser") {
  const auto r = run_cli("construct --q 9 --kind hermitian --format json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  auto F9 = pg3::Field::from_order(9);
  const pg3::Form parsed = pg3::Form::parse(j["form"].get<std::string>(), F9);
  const pg3::Surface expect =
      pg3::construct_extremal(pg3::ExtremalKind::kHermitian, F9);
  CHECK(parsed == expect.form());
  CHECK(j["d"] == 4);
}

TEST_CASE("audit quadric q=2") {
  const auto r = run_cli("audit --q 2 --kind quadric");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pairs_from_lines"] == 18);
  CHECK(j["pairs_from_points"] == 18);
  CHECK(j["identity_holds"] == true);
  CHECK(j["fiber_histogram"]["2"] == 9);
}

TEST_CASE("byte-stable output regardless of --jobs") {
  const auto a = run_cli("census --q 3 --degree 2 --jobs 1");
  const auto b = run_cli("census --q 3 --degree 2 --jobs 4");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);
  const auto c = run_cli("verify-lines --q 4 --kind hermitian");
  const auto d = run_cli("verify-lines --q 4 --kind hermitian");
  CHECK(c.out == d.out);
}

TEST_CASE("census attaining CSV") {
  const std::string path = "/tmp/pg3_test_attaining.csv";
  const auto r =
      run_cli("census --q 2 --degree 2 --attaining-csv " + path);
  CHECK(r.exit_code == 0);
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string content;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), f)) > 0) content.append(buf, n);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(content.rfind("form,N,nu\n", 0) == 0);
  // header + one row per attaining surface
  const json j = json::parse(r.out);
  const std::size_t rows =
      static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
  CHECK(rows == 1 + j["attaining"].size());
  CHECK(content.find(",9,6\n") != std::string::npos);
}

TEST_CASE("lines listing") {
  const auto r = run_cli("lines --q 2 --kind quadric --format json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["nu"] == 6);
  CHECK(j["lines"].size() == 6);
  CHECK(j["lines"][0]["rref"].size() == 8);
  CHECK(j["lines"][0]["pluecker"].size() == 6);

  const auto csv = run_cli("lines --q 2 --kind quadric --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("r00,r01") == 0);

  const auto info = run_cli("info --q 9");
  const json ji = json::parse(info.out);
  CHECK(ji["points_p3"] == 820);
  CHECK(ji["lines_p3"] == 7462);
  CHECK(ji["modulus"] == json::array({1, 0, 1}));
}
