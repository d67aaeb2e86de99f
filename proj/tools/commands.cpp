#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "deltashell/jacobi.hpp"
#include "deltashell/multidim.hpp"
#include "deltashell/negcount.hpp"
#include "deltashell/oracle.hpp"

namespace deltashell::cli {

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json inertia_json(const InertiaReport& r) {
  return {{"kappa_minus", r.kappa_minus}, {"kappa_zero", r.kappa_zero}, {"kappa_plus", r.kappa_plus},
          {"tolerance", r.tolerance}};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

ShellConfig require_shells(const Problem& p) {
  if (!p.shells) throw ParseError("field 'shells' is required for this command");
  return p.config();
}

const ChannelSpec& require_channel(const Problem& p) {
  if (!p.channel) throw ParseError("field 'channel' is required for this command");
  return *p.channel;
}

double largest_radius(const ShellConfig& c) { return c.empty() ? 1.0 : c[c.size() - 1].radius; }

}  // namespace

void Report::add(const std::string& name, json value) { results.push_back({{"name", name}, {"value", std::move(value)}}); }

void Report::add_verdict(const std::string& subject, const std::string& name, const Verdict& v) {
  verdicts.push_back({{"subject", subject},
                      {"name", name},
                      {"status", std::string(to_string(v.status))},
                      {"criterion", v.criterion},
                      {"evidence", v.evidence}});
}

json Report::to_json() const {
  json j{{"command", command}, {"inputs", inputs}, {"results", results}, {"verdicts", verdicts}, {"warnings", warnings}};
  if (!errors.empty()) j["errors"] = errors;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& r : results) os << r["name"].get<std::string>() << ": " << value_text(r["value"]) << "\n";
  for (const auto& v : verdicts)
    os << v["subject"].get<std::string>() << " " << v["name"].get<std::string>() << ": "
       << v["status"].get<std::string>() << " [" << v["criterion"].get<std::string>() << "] "
       << v["evidence"].get<std::string>() << "\n";
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  for (const auto& e : errors) os << "error: " << e << "\n";
  return os.str();
}

Report cmd_kappa(const Problem& p) {
  Report rep;
  rep.command = "kappa";
  rep.inputs = p.source;
  const ShellConfig config = require_shells(p);
  const ChannelSpec& ch = require_channel(p);
  const double l = ch.l();

  const CountResult res = count_bound_states(config, ch, p.options.tol);
  rep.add("l", l);
  rep.add("kappa_minus", res.count);
  rep.add("method", res.method);
  rep.add("kappa_plus_alpha", res.kappa_plus_alpha);
  if (res.method == "kappa-matrix" && !config.empty()) {
    const KappaMatrix k = kappa_matrix(config, l);
    rep.add("kappa_matrix", matrix_json(k.entries));
    rep.add("determinant", k.entries.determinant());
    rep.add("matrix_inertia", inertia_json(res.matrix_inertia));
  }
  if (res.degenerate) {
    rep.add("alternative_count", res.alternative);
    if (res.method == "kappa-matrix")
      rep.warnings.push_back("kappa matrix has " + std::to_string(res.matrix_inertia.kappa_zero) +
                             " eigenvalue(s) within " + fmt(res.matrix_inertia.tolerance) +
                             " of zero (zero-energy resonance); counting them as bound gives " +
                             std::to_string(res.alternative));
    else
      rep.warnings.push_back("zero-energy solution vanishes on a shell or at the threshold; nearby counts are " +
                             std::to_string(res.count) + " and " + std::to_string(res.alternative));
  }
  if (p.options.oracle) {
    const OscillationResult osc = oscillation_analysis(config, l);
    rep.add("oscillation_count", osc.count);
    const bool agree = osc.count == res.count || (res.degenerate && osc.count == res.alternative);
    if (agree) {
      rep.add_verdict("oracle", "agreement", holds("oscillation", "zero count " + std::to_string(osc.count) + " matches"));
    } else {
      rep.add_verdict("oracle", "agreement",
                      fails("oscillation", "zero count " + std::to_string(osc.count) + " differs from " +
                                               std::to_string(res.count)));
      rep.errors.push_back("oracle disagreement");
    }
  }
  return rep;
}

Report cmd_bounds(const Problem& p) {
  Report rep;
  rep.command = "bounds";
  rep.inputs = p.source;
  const ShellConfig config = require_shells(p);
  const ChannelSpec& ch = require_channel(p);
  const double l = ch.l();
  const AtomicMeasure neg = AtomicMeasure::negative_part_of(config);

  const CountResult exact = count_bound_states(config, ch, p.options.tol);
  rep.add("l", l);
  rep.add("kappa_minus", exact.count);
  rep.add("bargmann", bargmann_bound(neg, l));
  if (ch.is_log_channel())
    rep.warnings.push_back("at l = -1/2 the logarithmic Bargmann sum does not bound the count; any attraction binds");

  if (neg.empty()) {
    rep.add_verdict("channel", "positivity", holds("no-attraction", "every strength is positive, so kappa_- = 0"));
    return rep;
  }

  const NecessaryConditions nc = necessary_conditions(config, l);
  rep.add_verdict("channel", "max_count_possible", nc.max_count_possible);
  rep.add_verdict("channel", "positivity_possible", nc.positivity_possible);

  if (l == 0.0) {
    const KacKreinReport kk = kac_krein_check(neg);
    rep.add("kac_krein_sup", kk.sup_value);
    rep.add_verdict("channel", "kac_krein_sufficient", kk.sufficient);
    if (config.all_attractive())
      rep.add_verdict("channel", "kac_krein_necessary", kk.necessary);
  }

  if (ch.is_log_channel()) return rep;
  if (!config.all_attractive()) {
    rep.warnings.push_back("matrix, Gershgorin and two-state certificates need every strength negative; skipped");
    return rep;
  }

  const MatrixBargmannReport mb = matrix_bargmann(config, l);
  rep.add("matrix_norm", mb.norm);
  rep.add("trace_bound", mb.bound);
  rep.add_verdict("channel", "matrix_norm", mb.norm_check);
  rep.add_verdict("channel", "trace", mb.trace_check);
  rep.add_verdict("channel", "row_positivity", mb.gershgorin_positivity);
  if (mb.first_failing) rep.add("first_failing_shell", *mb.first_failing + 1);

  std::vector<double> weights = p.weights.value_or(std::vector<double>(config.size(), 1.0));
  std::vector<std::size_t> omega;
  if (p.omega_plus) {
    omega = *p.omega_plus;
  } else {
    for (std::size_t k = 0; k < config.size(); ++k)
      if (-config[k].strength * config[k].radius > 2.0 * l + 1.0) omega.push_back(k);
  }
  try {
    const Certificate g = gershgorin_classify(config, l, weights, omega);
    rep.add_verdict("channel", "gershgorin", g.verdict);
    if (g.kappa_minus) rep.add("gershgorin_kappa_minus", *g.kappa_minus);
  } catch (const DomainError& e) {
    rep.warnings.push_back(std::string("gershgorin: ") + e.what());
  }

  if (config.size() >= 3) {
    const double eps = p.epsilon.value_or(0.5);
    try {
      const Certificate t = epsilon_two_state_check(config, l, eps);
      rep.add_verdict("channel", "two_state", t.verdict);
      if (t.kappa_minus) rep.add("two_state_kappa_minus", *t.kappa_minus);
    } catch (const DomainError& e) {
      rep.warnings.push_back(std::string("two-state: ") + e.what());
    }
  }
  return rep;
}

Report cmd_criteria(const Problem& p) {
  Report rep;
  rep.command = "criteria";
  rep.inputs = p.source;
  const ShellConfig head = p.shells ? p.config() : ShellConfig{};
  const TailModel tail = p.family.value_or(TailModel{FiniteTail{}});
  validate_tail(head, tail);

  int n = 3;
  if (p.space)
    n = *p.space;
  else if (p.channel && p.channel->is_angular())
    n = p.channel->dimension();
  else
    rep.warnings.push_back("no dimension given; using n = 3");

  rep.add("family", std::string(tail_name(tail)));
  rep.add("n", n);

  const Verdict sa = check_self_adjoint(head, tail);
  const Verdict sb = check_semibounded(head, tail);
  rep.add_verdict("B", "self_adjoint", sa);
  rep.add_verdict("B", "semibounded", sb);
  if (sb.holds()) {
    rep.add_verdict("B", "discrete", check_discrete(head, tail));
  } else {
    rep.add_verdict("B", "discrete", inconclusive("discrete-windows", "needs semiboundedness, which is not established"));
  }
  rep.add_verdict("B", "continuous_spectrum", check_continuous_spectrum(head, tail));

  const MultidimReport md = multidim_verdicts(head, tail, n);
  rep.add_verdict("H", "self_adjoint", md.self_adjoint);
  rep.add_verdict("H", "semibounded", md.semibounded);
  rep.add_verdict("H", "essential_spectrum", md.essential_spectrum);
  rep.add_verdict("H", "discrete", md.discrete);
  if (md.deficiency_infinite)
    rep.add("n_pm", "infinite");
  else if (md.self_adjoint.holds())
    rep.add("n_pm", 0);
  else
    rep.add("n_pm", "unknown");
  return rep;
}

Report cmd_total(const Problem& p) {
  Report rep;
  rep.command = "total";
  rep.inputs = p.source;
  const ShellConfig config = require_shells(p);
  if (!p.space) throw ParseError("field 'space' is required for total");
  const int n = *p.space;

  const TotalResult t = total_bound_states(config, n, p.options.lmax, p.options.tol);
  rep.add("n", n);
  rep.add("total", t.total);
  json ledger = json::array();
  std::ostringstream csv;
  csv << "l,l_eff,mult,kappa\n";
  for (const auto& e : t.ledger.entries) {
    ledger.push_back({{"l", e.ell}, {"l_eff", e.l_eff}, {"mult", e.multiplicity}, {"kappa", e.kappa}});
    csv << e.ell << "," << fmt(e.l_eff) << "," << e.multiplicity << "," << e.kappa << "\n";
  }
  rep.csv = csv.str();
  rep.add("ledger", ledger);
  rep.add("truncation_l", t.ledger.truncation_l);
  rep.add("truncation_reason", t.ledger.truncation_reason);
  if (!t.ledger.certified) rep.warnings.push_back("channel limit reached before the cutoff; total is a lower bound");
  if (t.degenerate) rep.warnings.push_back("some channel has a zero-energy resonance; see the kappa command");

  if (n == 2 || n == 3) {
    const AggregateBounds b = aggregate_bounds(config, n);
    rep.add(b.channel_sum_id, b.channel_sum);
    rep.add(b.closed_form_id, b.closed_form);
    if (b.certified) {
      const bool ok = static_cast<double>(t.total) <= b.channel_sum;
      rep.add_verdict("total", "aggregate_bound",
                      ok ? holds(b.channel_sum_id, "total " + std::to_string(t.total) + " <= " + fmt(b.channel_sum))
                         : fails(b.channel_sum_id, "total " + std::to_string(t.total) + " > " + fmt(b.channel_sum)));
    } else {
      rep.warnings.push_back("the n = 2 aggregate sums are not upper bounds (the l = -1/2 channel binds for any attraction)");
    }
  }
  return rep;
}

Report cmd_sweep(const Problem& p) {
  Report rep;
  rep.command = "sweep";
  rep.inputs = p.source;
  if (!p.shells) throw ParseError("field 'shells' is required for sweep");
  const ChannelSpec& ch = require_channel(p);
  if (p.sweep.empty()) throw ParseError("field 'sweep' is required for sweep");
  for (const auto& a : p.sweep)
    if (a.index >= p.shells->size()) throw ParseError("sweep axis " + a.label() + " names a shell that does not exist");

  const SweepAxis& x = p.sweep[0];
  const std::size_t ny = p.sweep.size() > 1 ? p.sweep[1].steps : 1;
  const std::size_t cells = x.steps * ny;
  std::vector<std::string> out(cells);

  auto eval = [&](std::size_t cell) {
    auto raw = *p.shells;
    const std::size_t ix = cell / ny;
    const std::size_t iy = cell % ny;
    auto set = [&](const SweepAxis& a, double v) {
      if (a.param == "strength")
        raw[a.index].second = v;
      else
        raw[a.index].first = v;
    };
    set(x, x.at(ix));
    std::ostringstream row;
    row << fmt(x.at(ix));
    if (p.sweep.size() > 1) {
      set(p.sweep[1], p.sweep[1].at(iy));
      row << "," << fmt(p.sweep[1].at(iy));
    }
    try {
      const CountResult r = count_bound_states(normalize_config(raw), ch, p.options.tol);
      row << "," << r.count << "," << (r.degenerate ? 1 : 0);
    } catch (const Error&) {
      row << ",NA,NA";
    }
    out[cell] = row.str();
  };

  const std::size_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < cells; c += workers) eval(c);
    });
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << x.label();
  if (p.sweep.size() > 1) csv << "," << p.sweep[1].label();
  csv << ",kappa_minus,degenerate\n";
  std::size_t failed = 0;
  for (const auto& row : out) {
    csv << row << "\n";
    if (row.ends_with("NA")) ++failed;
  }
  rep.csv = csv.str();
  rep.add("cells", cells);
  if (failed) rep.warnings.push_back(std::to_string(failed) + " cell(s) gave an invalid configuration and were written as NA");
  return rep;
}

Report cmd_oracle_check(const Problem& p) {
  Report rep;
  rep.command = "oracle-check";
  rep.inputs = p.source;
  const ShellConfig config = require_shells(p);
  const ChannelSpec& ch = require_channel(p);
  const double l = ch.l();

  const CountResult exact = count_bound_states(config, ch, p.options.tol);
  const OscillationResult osc = oscillation_analysis(config, l);
  rep.add("kappa_minus", exact.count);
  rep.add("method", exact.method);
  rep.add("oscillation_count", osc.count);
  if (osc.flagged) {
    rep.add("oscillation_shifted", json::array({osc.count_more_attractive, osc.count_less_attractive}));
    rep.warnings.push_back("zero-energy solution vanishes on a shell or at the threshold");
  }
  const bool agree = osc.count == exact.count || (exact.degenerate && osc.count == exact.alternative);
  if (agree) {
    rep.add_verdict("oracle", "oscillation", holds("oscillation", "zero count matches"));
  } else {
    rep.add_verdict("oracle", "oscillation",
                    fails("oscillation", std::to_string(osc.count) + " zeros against " + std::to_string(exact.count)));
    rep.errors.push_back("oracle disagreement");
  }

  const double rn = largest_radius(config);
  double length = p.options.length.value_or(4.0 * rn);
  double mesh = p.options.mesh.value_or(1e-3 * rn);
  json fd = json::array();
  std::vector<std::size_t> counts;
  for (int level = 0; level < 3; ++level) {
    try {
      const std::size_t c = fd_count(config, l, length, mesh);
      counts.push_back(c);
      fd.push_back({{"length", length}, {"mesh", mesh}, {"count", c}});
    } catch (const MeshTooCoarse& e) {
      rep.warnings.push_back(std::string("finite differences: ") + e.what());
      break;
    }
    length *= 2.0;
    mesh *= 0.5;
  }
  rep.add("finite_difference", fd);
  if (counts.size() < 2) {
    rep.add_verdict("oracle", "finite_difference", inconclusive("fd-refinement", "not enough refinement levels"));
  } else if (counts[counts.size() - 1] != counts[counts.size() - 2]) {
    rep.add_verdict("oracle", "finite_difference",
                    inconclusive("fd-refinement", "count still changes under refinement"));
  } else if (counts.back() == osc.count) {
    rep.add_verdict("oracle", "finite_difference", holds("fd-refinement", "stable count matches"));
  } else {
    rep.add_verdict("oracle", "finite_difference",
                    fails("fd-refinement", "stable count " + std::to_string(counts.back()) + " against " +
                                               std::to_string(osc.count) + "; the truncation length may be too short"));
    rep.warnings.push_back("finite-difference count disagrees; try a larger --length");
  }
  return rep;
}

Report run_command(const std::string& command, const Problem& p) {
  if (command == "kappa") return cmd_kappa(p);
  if (command == "bounds") return cmd_bounds(p);
  if (command == "criteria") return cmd_criteria(p);
  if (command == "total") return cmd_total(p);
  if (command == "sweep") return cmd_sweep(p);
  if (command == "oracle-check") return cmd_oracle_check(p);
  throw ParseError("unknown command '" + command + "'");
}

}  // namespace deltashell::cli
