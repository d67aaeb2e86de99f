#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cli.hpp"

namespace cli = deltashell::cli;

int main(int argc, char** argv) {
  CLI::App app{"Bound states of radial delta-shell Schroedinger operators"};
  app.require_subcommand(1);

  std::string file;
  bool as_json = false;
  std::string csv_path;
  double tol = 0.0;
  bool oracle = false;
  int lmax = -1;
  double length = 0.0;
  double mesh = 0.0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"kappa", "count negative eigenvalues in one channel"},
      {"bounds", "Bargmann-type bounds and certificates for one channel"},
      {"criteria", "self-adjointness, semiboundedness and spectrum of a shell family"},
      {"total", "total count in R^n with the per-channel ledger"},
      {"sweep", "count over a grid of strengths or radii (CSV)"},
      {"oracle-check", "compare the count with the oscillation and finite-difference oracles"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("problem", file, "problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", as_json, "print the JSON report");
    sub->add_option("--csv", csv_path, "write the CSV table to PATH");
    sub->add_option("--tol", tol, "zero threshold for the matrix inertia")->check(CLI::PositiveNumber);
    sub->add_flag("--oracle", oracle, "cross-check against the oscillation oracle");
    sub->add_option("--lmax", lmax, "highest angular channel to examine")->check(CLI::NonNegativeNumber);
    sub->add_option("--length", length, "finite-difference truncation length")->check(CLI::PositiveNumber);
    sub->add_option("--mesh", mesh, "finite-difference mesh width")->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  cli::Report rep;
  rep.command = command;
  try {
    cli::Problem p = cli::load_problem(file);
    cli::Options flags;
    if (tol > 0.0) flags.tol = tol;
    flags.oracle = oracle;
    if (lmax >= 0) flags.lmax = lmax;
    if (length > 0.0) flags.length = length;
    if (mesh > 0.0) flags.mesh = mesh;
    cli::apply_flags(p, flags);
    rep = cli::run_command(command, p);
  } catch (const deltashell::Error& e) {
    rep.errors.push_back(e.what());
  }

  if (!csv_path.empty() && !rep.csv.empty()) {
    std::ofstream out(csv_path);
    if (!out) {
      rep.errors.push_back("cannot write " + csv_path);
    } else {
      out << rep.csv;
    }
  }

  if (as_json) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else if (command == "sweep" && csv_path.empty() && rep.ok()) {
    std::cout << rep.csv;
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  } else {
    const std::string text = rep.to_text();
    (rep.ok() ? std::cout : std::cerr) << text;
  }
  return rep.ok() ? 0 : 1;
}
