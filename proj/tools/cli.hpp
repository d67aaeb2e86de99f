#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "deltashell/model.hpp"

namespace deltashell::cli {

using json = nlohmann::json;

struct ParseError : Error {
  using Error::Error;
};

struct SweepAxis {
  std::string param;  // "strength" or "radius"
  std::size_t index;  // zero-based shell index
  double from;
  double to;
  std::size_t steps;

  double at(std::size_t i) const;
  std::string label() const;
};

struct Options {
  std::optional<double> tol;
  bool oracle = false;
  std::optional<int> lmax;
  std::optional<double> length;
  std::optional<double> mesh;
};

struct Problem {
  json source;
  std::optional<std::vector<std::pair<double, double>>> shells;
  std::optional<ChannelSpec> channel;
  std::optional<int> space;
  std::optional<TailModel> family;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<std::size_t>> omega_plus;  // zero-based
  std::optional<double> epsilon;
  std::vector<SweepAxis> sweep;
  Options options;

  ShellConfig config() const;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

// Command-line flags override the file's options block.
void apply_flags(Problem& p, const Options& flags);

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::array();
  json verdicts = json::array();
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
  std::string csv;  // sweep and ledger output

  void add(const std::string& name, json value);
  void add_verdict(const std::string& subject, const std::string& name, const Verdict& v);
  json to_json() const;
  std::string to_text() const;
  bool ok() const { return errors.empty(); }
};

Report cmd_kappa(const Problem& p);
Report cmd_bounds(const Problem& p);
Report cmd_criteria(const Problem& p);
Report cmd_total(const Problem& p);
Report cmd_sweep(const Problem& p);
Report cmd_oracle_check(const Problem& p);

Report run_command(const std::string& command, const Problem& p);

}  // namespace deltashell::cli
