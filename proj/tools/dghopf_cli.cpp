#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"

using dghopf::cli::CommandOptions;

int main(int argc, char** argv) {
  CLI::App app{"Cohomology and deformations of d.g. Hopf algebras"};
  app.require_subcommand(1);
  CommandOptions o;
  std::string json_path;
  app.add_option("--json", json_path, "write the machine-readable report to this path");

  auto window_opts = [&](CLI::App* c) {
    c->add_option("--theory", o.theory, "hopf, hochschild, cartier or harrison")->capture_default_str();
    c->add_option("--q", o.q, "truncation parameter (integer or inf)")->capture_default_str();
    c->add_option("--mmax", o.m_max, "cap on the bar arity m");
    c->add_option("--nmax", o.n_max, "cap on the cobar arity n");
    c->add_option("--dmax", o.d_max, "internal-degree cap (default: DGHOPF_DMAX)");
    c->add_flag("--unrestricted", o.unrestricted, "allow m = 0 and n = 0");
  };

  auto* validate = app.add_subcommand("validate", "check the d.g. Hopf algebra axioms");
  validate->add_option("file", o.input, "presentation document or built-in example name")->required();

  auto* coh = app.add_subcommand("cohomology", "cohomology of a windowed complex");
  coh->add_option("file", o.input)->required();
  coh->add_option("--degree", o.degree, "total degree")->required();
  window_opts(coh);

  auto* deform = app.add_subcommand("deform", "build a random deformation order by order");
  deform->add_option("file", o.input)->required();
  deform->add_option("--order", o.order)->required();
  deform->add_option("--seed", o.seed)->capture_default_str();

  auto* rigid = app.add_subcommand("rigidity", "trivialize a random deformation");
  rigid->add_option("file", o.input)->required();
  rigid->add_option("--order", o.order)->required();
  rigid->add_option("--seed", o.seed)->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "staircase reduction of a Harrison cocycle");
  reduce->add_option("file", o.input)->required();
  reduce->add_option("--cocycle", o.cocycle)->required();
  window_opts(reduce);

  auto* example = app.add_subcommand("example", "emit a built-in presentation document");
  example->add_option("name", o.input, "lambda1, lambda2, lambda3, acyclic or fp-trunc")->required();
  example->add_option("--prime", o.prime, "characteristic for fp-trunc (default 3)");
  example->add_option("--top", o.top, "top degree for acyclic (default 6)");
  example->add_option("--field", o.field, "rational or prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dghopf::cli::usage;
  }
  o.command = app.get_subcommands().front()->get_name();

  dghopf::Json report;
  int code = dghopf::cli::run_command(o, std::cout, report);
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) {
      std::cerr << "cannot write " << json_path << "\n";
      return dghopf::cli::usage;
    }
    f << report.dump(2) << "\n";
  }
  return code;
}
