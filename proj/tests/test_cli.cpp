#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "sdg/report.hpp"
#include "sdg/suites.hpp"

using namespace sdg;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  std::string out_path = "/tmp/sdg_cli_out_" + std::to_string(counter++);
  std::string cmd = env + " " + std::string(SDG_CLI_PATH) + " " + args +
                    " > " + out_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("verify exits 0 on success and reports deterministically") {
  auto a = run_cli("verify --suites igroup --dim 2 --trials 2 --seed 42 "
                   "--range 1000 --format json");
  auto b = run_cli("verify --suites igroup --dim 2 --trials 2 --seed 42 "
                   "--range 1000 --format json");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);  // byte-identical
  CHECK(a.out.find("\"failed\": 0") != std::string::npos);

  auto c = run_cli("verify --suites igroup --dim 2 --trials 2 --seed 43 "
                   "--range 1000 --format json");
  CHECK(c.exit_code == 0);
  CHECK(c.out != a.out);  // the seed is part of the configuration
}

TEST_CASE("SDG_SEED environment fallback matches --seed") {
  auto flagged = run_cli("verify --suites weil --trials 2 --seed 7 --format json");
  auto env = run_cli("verify --suites weil --trials 2 --format json",
                     "SDG_SEED=7");
  CHECK(flagged.exit_code == 0);
  CHECK(env.exit_code == 0);
  CHECK(flagged.out == env.out);
}

TEST_CASE("negative controls yield expected-fail records and exit 0") {
  auto r = run_cli(
      "verify --suites igroup --dim 2 --trials 2 --negative-controls "
      "--format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"status\": \"xfail\"") != std::string::npos);
  CHECK(r.out.find("igroup_negative_injected_a0") != std::string::npos);
  CHECK(r.out.find("\"failed\": 0") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("verify --suites no_such_suite").exit_code == 2);
  CHECK(run_cli("verify --format yaml").exit_code == 2);
  CHECK(run_cli("verify --group so3").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("demo --connection /nonexistent.json").exit_code == 2);
}

TEST_CASE("--out writes the rendered report") {
  std::string path = "/tmp/sdg_cli_report.json";
  auto r = run_cli("verify --suites weil --trials 1 --format json --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  auto text = slurp(path);
  CHECK(text.find("weil_ring_axioms") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("demo prints the Heisenberg bracket trace") {
  auto r = run_cli("demo heisenberg");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("bracket [u,v] = Gamma[u,v] - Gamma[v,u] = (0, 0, 1)") !=
        std::string::npos);
  CHECK(r.out.find("[P,Q] (bracket of points) = (0, 0, e1*e2)") !=
        std::string::npos);
  CHECK(r.out.find("non-abelian") != std::string::npos);

  auto z = run_cli("demo gl2 --u 1,0,0,1 --v 1,0,0,1");
  CHECK(z.exit_code == 0);
  CHECK(z.out.find("bracket [u,v] = Gamma[u,v] - Gamma[v,u] = (0, 0, 0, 0)") !=
        std::string::npos);
}

TEST_CASE("demo accepts a symmetric connection file and reports it abelian") {
  std::string path = "/tmp/sdg_cli_conn.json";
  {
    ConnectionSymbol g = ConnectionSymbol::zero(2, 2);
    g.add_coeff_term(0, 0, 1, Monomial::unit(2), rat(1, 2));
    g.add_coeff_term(0, 1, 0, Monomial::unit(2), rat(1, 2));
    std::ofstream f(path);
    f << g.to_json_text();
  }
  auto r = run_cli("demo --connection " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("symbol symmetric: yes") != std::string::npos);
  CHECK(r.out.find("abelian") != std::string::npos);
  CHECK(r.out.find("torsion tau(P,Q) = (0, 0)") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("every check id appears once and maps to one anchor") {
  SuiteConfig cfg;
  cfg.trials = 1;
  cfg.dim = 2;
  cfg.range = 100;
  cfg.negative_controls = true;
  Report rep = run_suites(cfg);
  CHECK(rep.ok());  // a single trial must already suffice everywhere
  std::map<std::string, std::string> seen;
  for (const auto& c : rep.checks) {
    CHECK(seen.emplace(c.id, c.anchor).second);
    CHECK_FALSE(c.anchor.empty());
  }
}

TEST_CASE("report rendering flags failures") {
  Report rep;
  rep.checks.push_back({"z_check", "plumbing", CheckResult::Status::Pass, "", 1.0});
  rep.checks.push_back(
      {"a_check", "some law", CheckResult::Status::Fail, "w", 2.0});
  CHECK_FALSE(rep.ok());
  CHECK(rep.failed() == 1);
  auto text = rep.to_text();
  CHECK(text.find("[FAIL] a_check") != std::string::npos);
  CHECK(text.find("witness: w") != std::string::npos);
  // sorted by id: a_check precedes z_check
  CHECK(text.find("a_check") < text.find("z_check"));
  auto json = rep.to_json();
  CHECK(json.find("\"status\": \"fail\"") != std::string::npos);
}
