#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdg/suites.hpp"

namespace {

using namespace sdg;

std::vector<Rational> parse_csv_rationals(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rat_parse(item));
  return out;
}

int cmd_verify(const SuiteConfig& cfg, const std::string& out_path,
               const std::string& format) {
  Report report = run_suites(cfg);
  std::string rendered =
      format == "json" ? report.to_json() : report.to_text();
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw error("cannot open output path: " + out_path);
    f << rendered;
  }
  return report.ok() ? 0 : 1;
}

void print_tensor(std::ostream& os, const std::string& name,
                  const WeilTensor3& t) {
  os << name << " (nonzero entries):\n";
  bool any = false;
  for (unsigned i = 0; i < t.out_dim(); ++i)
    for (unsigned j = 0; j < t.in_dim(); ++j)
      for (unsigned k = 0; k < t.in_dim(); ++k)
        if (!t.at(i, j, k).is_zero()) {
          os << "  [" << i << "; " << j << "," << k
             << "] = " << t.at(i, j, k).to_string() << "\n";
          any = true;
        }
  if (!any) os << "  (all zero)\n";
}

int cmd_demo(const std::string& group_name, const std::string& conn_path,
             std::string u_csv, std::string v_csv) {
  ConnectionSymbol conn;
  Vec e;
  SigPtr sig = make_algebra(2, 3);
  std::string label;

  if (!conn_path.empty()) {
    std::ifstream f(conn_path);
    if (!f) throw error("cannot read connection file: " + conn_path);
    std::stringstream buf;
    buf << f.rdbuf();
    conn = ConnectionSymbol::from_json_text(buf.str());
    e = Vec(sig, conn.dim());
    label = "connection " + conn_path;
  } else {
    MatrixGroup g = parse_group(group_name);
    conn = extract_connection_symbol(g, ConnectionSide::Left);
    e = chart_identity(g, sig);
    label = group_name + " (left translation connection)";
  }
  const unsigned n = conn.dim();

  if (u_csv.empty())
    u_csv = n >= 2 ? "1,0" + std::string(n > 2 ? ",0" : "") : "1";
  if (v_csv.empty())
    v_csv = n >= 2 ? "0,1" + std::string(n > 2 ? ",0" : "") : "1";
  auto pad = [&](std::vector<Rational> v) {
    while (v.size() < n) v.push_back(0);
    v.resize(n);
    return v;
  };
  Vec u = Vec::from_rationals(sig, pad(parse_csv_rationals(u_csv)));
  Vec v = Vec::from_rationals(sig, pad(parse_csv_rationals(v_csv)));

  std::ostream& os = std::cout;
  os << "chart quantities for " << label << "\n";
  os << "dimension: " << n << "\n";
  os << "u = " << u.to_string() << "\n";
  os << "v = " << v.to_string() << "\n\n";

  WeilTensor3 ge = conn.eval_at(e);
  print_tensor(os, "Gamma at the base point", ge);

  Vec guv = ge.apply(u, v), gvu = ge.apply(v, u);
  os << "\nGamma[u,v] = " << guv.to_string() << "\n";
  os << "Gamma[v,u] = " << gvu.to_string() << "\n";
  os << "bracket [u,v] = Gamma[u,v] - Gamma[v,u] = "
     << (guv - gvu).to_string() << "\n";

  bool symmetric = conn.is_symmetric();
  os << "symbol symmetric: " << (symmetric ? "yes" : "no") << "\n";
  os << "induced monad group: " << (symmetric ? "abelian" : "non-abelian")
     << "\n\n";

  // exact second-order monad points P = e + d1 u, Q = e + d2 v
  MonadGroup mg(conn, e);
  Vec P = e + u * WeilElement::generator(sig, 0);
  Vec Q = e + v * WeilElement::generator(sig, 1);
  os << "P = e + d1*u = " << P.to_string() << "\n";
  os << "Q = e + d2*v = " << Q.to_string() << "\n";
  os << "P*Q  (chart formula)      = " << mg.mul(P, Q).to_string() << "\n";
  os << "P*Q  (affine combination) = " << mg.mul_bch(P, Q).to_string() << "\n";
  os << "P*Q  (exp/log transport)  = " << mg.mul_transport(P, Q).to_string()
     << "\n";
  os << "[P,Q] (bracket of points) = "
     << mg.lie_bracket_points(P, Q).to_string() << "\n";
  os << "P Q P^-1 Q^-1 (commutator) = " << mg.commutator(P, Q).to_string()
     << "\n";
  os << "torsion tau(P,Q) = "
     << torsion(conn, e, P, Q, TorsionMode::Chart, NeighbourCheck::SecondOrder)
            .to_string()
     << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification harness for second-order infinitesimal "
               "geometry and groups"};
  app.require_subcommand(1);

  sdg::SuiteConfig cfg;
  if (const char* env = std::getenv("SDG_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (...) {
      std::cerr << "invalid SDG_SEED value: " << env << "\n";
      return 2;
    }
  }

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  std::string out_path, format = "text";
  std::vector<std::string> suites;
  verify->add_option("--seed", cfg.seed, "deterministic seed");
  verify->add_option("--trials", cfg.trials, "repetitions per identity")
      ->check(CLI::PositiveNumber);
  verify->add_option("--dim", cfg.dim, "chart dimension for generic suites")
      ->check(CLI::PositiveNumber);
  verify->add_option("--range", cfg.range,
                     "coefficient range for random rationals")
      ->check(CLI::PositiveNumber);
  verify->add_option("--suites", suites,
                     "subset of weil,spaces,calculus,connection,igroup,liegroup")
      ->delimiter(',');
  verify->add_option("--group", cfg.group, "gl2, gl3 or heisenberg");
  verify->add_flag("--strict,!--no-strict", cfg.strict,
                   "enforce neighbourhood preconditions");
  verify->add_flag("--negative-controls", cfg.negative_controls,
                   "include deliberately corrupted laws as expected failures");
  verify->add_option("--out", out_path, "write the report to a file");
  verify->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* demo = app.add_subcommand(
      "demo", "print the exact chart quantities for two directions");
  std::string group_name = "heisenberg", conn_path, u_csv, v_csv;
  demo->add_option("group", group_name, "gl2, gl3 or heisenberg");
  demo->add_option("--connection", conn_path,
                   "connection symbol JSON file instead of a built-in group");
  demo->add_option("--u", u_csv, "first direction, comma-separated rationals");
  demo->add_option("--v", v_csv, "second direction, comma-separated rationals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      cfg.suites = suites;
      return cmd_verify(cfg, out_path, format);
    }
    return cmd_demo(group_name, conn_path, u_csv, v_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
