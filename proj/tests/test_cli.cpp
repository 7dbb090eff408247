#include <cstdio>
#include <cstdlib>
#include <string>

#include <doctest.h>

#include "gschur/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cmd(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

const char* cli_path() { return std::getenv("GSCHUR_CLI"); }

}  // namespace

TEST_CASE("cli: cdf prints 12 significant digits") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli + " cdf --weights 0.5,0.5 --alpha 1 --beta 1 --x 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.593994150290\n");
}

TEST_CASE("cli: compare emits a parseable verdict") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli +
                   " compare --mu 0.5,0.5 --lambda 1,0 --alpha 2 --beta 1 --x 3 "
                   "--json");
  CHECK(r.exit_code == 0);
  auto j = gschur::json::parse(r.out);
  CHECK(j.at("schema") == "gamma-schur/1");
  CHECK(j.at("relation") == "MuGE");
  CHECK(j.at("decided_by") == "Theorem1");
  auto verdict = j.get<gschur::OrderVerdict>();
  CHECK(verdict.relation == gschur::Relation::MuGE);
  CHECK(*verdict.concave_threshold == doctest::Approx(2.5));
}

TEST_CASE("cli: usage errors exit 2") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  CHECK(run_cmd(cli + " nonsense 2>/dev/null").exit_code == 2);
  CHECK(run_cmd(cli + " cdf --weights 1 2>/dev/null").exit_code == 2);
}

TEST_CASE("cli: domain errors exit 1 with structured stderr") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli +
                   " compare --mu 0.9,0.4 --lambda 1,0.1 --alpha 1 --beta 1 --x 1 "
                   "2>&1 1>/dev/null");
  CHECK(r.exit_code == 1);
  auto j = gschur::json::parse(r.out);
  CHECK(j.at("error") == "NotComparable");
  CHECK(j.at("schema") == "gamma-schur/1");
}

TEST_CASE("cli: fixed seed gives byte-identical output") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  std::string cmd = cli + " verify --suite bakirov --seed 7";
  auto a = run_cmd(cmd);
  auto b = run_cmd(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli: crossings CSV scan") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli +
                   " crossings --mu 0.5,0.5 --lambda 1,0 --alpha 1 --beta 1 "
                   "--grid 64 --csv -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("x,P_mu,P_lambda,D\n", 0) == 0);
  // one header + 65 grid rows
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 66);
}

TEST_CASE("cli: crossings JSON reports the single crossing") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli +
                   " crossings --mu 0.5,0.5 --lambda 1,0 --alpha 1 --beta 1 --json");
  CHECK(r.exit_code == 0);
  auto rep = gschur::json::parse(r.out).get<gschur::CrossingReport>();
  REQUIRE(rep.crossings.size() == 1);
  CHECK(rep.crossings[0].x == doctest::Approx(1.2564312).epsilon(1e-4));
}

TEST_CASE("cli: plans round-trip through their JSON") {
  if (!cli_path()) return;
  std::string cli = cli_path();
  auto r = run_cmd(cli + " plan-signal --x 1.5 --delta 0.01 --json");
  CHECK(r.exit_code == 0);
  auto plan = gschur::json::parse(r.out).get<gschur::SignalPlan>();
  CHECK(plan.min_samples == 7);
  CHECK(plan.monotone_region);

  auto t = run_cmd(cli + " plan-trace --spectrum 3,2,1 --epsilon 0.25 --delta 0.01 --json");
  CHECK(t.exit_code == 0);
  auto tplan = gschur::json::parse(t.out).get<gschur::TracePlan>();
  CHECK(tplan.trace == doctest::Approx(6.0));
  CHECK(tplan.exact_samples <= tplan.bound_samples);
}
