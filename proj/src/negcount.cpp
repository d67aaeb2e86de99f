#include "deltashell/negcount.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "deltashell/oracle.hpp"
#include "deltashell/special.hpp"

namespace deltashell {

namespace {

void require_matrix_channel(double l) {
  if (!(l > -0.5) || !std::isfinite(l))
    throw DomainError("the matrix formulas need l > -1/2");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::size_t count_positive(const ShellConfig& config) {
  return static_cast<std::size_t>(std::count_if(config.shells().begin(), config.shells().end(),
                                                [](const Shell& s) { return s.strength > 0.0; }));
}

void require_attractive(const ShellConfig& config) {
  if (!config.all_attractive()) throw MixedSigns("this test needs every strength negative");
}

}  // namespace

WeylMatrix weyl_matrix(const ShellConfig& config, double l, double lambda) {
  require_matrix_channel(l);
  if (!(lambda <= 0.0)) throw DomainError("lambda must be <= 0");
  if (config.empty()) throw DomainError("the Weyl matrix needs at least one shell");
  const auto n = static_cast<Eigen::Index>(config.size());
  WeylMatrix w{Eigen::MatrixXd(n, n), l, lambda};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      const double rj = config[static_cast<std::size_t>(j)].radius;
      const double rk = config[static_cast<std::size_t>(k)].radius;
      const double v = lambda == 0.0 ? std::pow(rj, l + 1.0) * std::pow(rk, -l) / (2.0 * l + 1.0)
                                     : green_kernel(l, lambda, rj, rk);
      w.entries(j, k) = w.entries(k, j) = v;
    }
  }
  return w;
}

KappaMatrix kappa_matrix(const ShellConfig& config, double l) {
  require_matrix_channel(l);
  const auto n = static_cast<Eigen::Index>(config.size());
  KappaMatrix m{Eigen::MatrixXd(n, n), l};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Shell& sj = config[static_cast<std::size_t>(j)];
    if (sj.strength == 0.0) throw ZeroStrength("zero strength in kappa matrix");
    m.entries(j, j) = (2.0 * l + 1.0) / sj.strength + sj.radius;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double rk = config[static_cast<std::size_t>(k)].radius;
      m.entries(j, k) = m.entries(k, j) = std::pow(sj.radius, l + 1.0) * std::pow(rk, -l);
    }
  }
  return m;
}

Eigen::MatrixXd scaled_kappa_matrix(const ShellConfig& config, double l) {
  require_matrix_channel(l);
  const auto n = static_cast<Eigen::Index>(config.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Shell& sj = config[static_cast<std::size_t>(j)];
    if (sj.strength == 0.0) throw ZeroStrength("zero strength in kappa matrix");
    m(j, j) = 1.0 + (2.0 * l + 1.0) / (sj.strength * sj.radius);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double rk = config[static_cast<std::size_t>(k)].radius;
      m(j, k) = m(k, j) = std::pow(sj.radius / rk, l + 0.5);
    }
  }
  return m;
}

CountResult count_bound_states(const ShellConfig& config, const ChannelSpec& channel,
                               std::optional<double> tol) {
  const double l = channel.l();
  CountResult out;
  out.kappa_plus_alpha = count_positive(config);
  const std::size_t kappa_minus_alpha = config.size() - out.kappa_plus_alpha;

  if (channel.is_log_channel()) {
    const OscillationResult osc = oscillation_analysis(config, l);
    out.method = "oscillation";
    out.count = osc.count;
    out.degenerate = osc.flagged && osc.count_more_attractive != osc.count_less_attractive;
    out.alternative = osc.count;
    if (out.degenerate)
      out.alternative = osc.count_more_attractive != osc.count ? osc.count_more_attractive : osc.count_less_attractive;
    return out;
  }

  out.method = "kappa-matrix";
  const Eigen::MatrixXd m = scaled_kappa_matrix(config, l);
  out.matrix_inertia = tol ? inertia(m, *tol) : inertia(m);
  const std::size_t kp = out.matrix_inertia.kappa_plus;
  if (kp < out.kappa_plus_alpha) throw std::logic_error("kappa_+(M) < kappa_+(alpha): inertia is inconsistent");
  out.count = kp - out.kappa_plus_alpha;
  out.degenerate = out.matrix_inertia.kappa_zero > 0;
  out.alternative = std::min(out.count + out.matrix_inertia.kappa_zero, kappa_minus_alpha);
  if (out.count > kappa_minus_alpha) throw std::logic_error("count exceeds kappa_-(alpha)");
  return out;
}

double bargmann_bound(const AtomicMeasure& measure, double l) {
  if (!(l >= -0.5)) throw DomainError("l must be >= -1/2");
  double s = 0.0;
  if (l == -0.5) {
    for (const auto& a : measure.atoms()) s += a.weight * a.position * std::abs(std::log(a.position));
    return s;
  }
  for (const auto& a : measure.atoms()) s += a.weight * a.position;
  return s / (2.0 * l + 1.0);
}

double birman_schwinger_trace(const AtomicMeasure& measure, double l, double lambda) {
  if (!(lambda <= 0.0)) throw DomainError("lambda must be <= 0");
  if (lambda == 0.0) return bargmann_bound(measure, l);
  double s = 0.0;
  for (const auto& a : measure.atoms()) s += a.weight * green_kernel(l, lambda, a.position, a.position);
  return s;
}

NecessaryConditions necessary_conditions(const ShellConfig& config, double l) {
  if (!(l >= -0.5)) throw DomainError("l must be >= -1/2");
  const double w = 2.0 * l + 1.0;
  NecessaryConditions out;

  if (!config.all_attractive()) {
    out.max_count_possible = fails("necessary-max-count", "kappa_- = N requires every strength negative");
  } else {
    out.max_count_possible = holds("necessary-max-count", "|alpha_k| r_k > 2l+1 for every shell");
    for (std::size_t k = 0; k < config.size(); ++k) {
      const double v = -config[k].strength * config[k].radius;
      if (!(v > w)) {
        out.max_count_possible = fails("necessary-max-count", "|alpha_" + std::to_string(k + 1) + "| r_" +
                                                                  std::to_string(k + 1) + " = " + fmt(v) +
                                                                  " <= 2l+1 = " + fmt(w));
        break;
      }
    }
  }

  if (std::none_of(config.shells().begin(), config.shells().end(), [](const Shell& s) { return s.strength < 0.0; })) {
    out.positivity_possible = holds("necessary-positivity", "no attractive shell, kappa_-(alpha) = 0");
  } else if (!config.all_attractive()) {
    out.positivity_possible =
        inconclusive("necessary-positivity", "the row condition is necessary only when every strength is negative");
  } else {
    out.positivity_possible = holds("necessary-positivity", "|alpha_k| r_k <= 2l+1 for every shell");
    for (std::size_t k = 0; k < config.size(); ++k) {
      const double v = -config[k].strength * config[k].radius;
      if (v > w) {
        out.positivity_possible = fails("necessary-positivity", "|alpha_" + std::to_string(k + 1) + "| r_" +
                                                                    std::to_string(k + 1) + " = " + fmt(v) +
                                                                    " > 2l+1 = " + fmt(w) + ", so kappa_- >= 1");
        break;
      }
    }
  }
  return out;
}

namespace {

// Weighted off-diagonal row sum of the Gershgorin test, divided by r_k.
double gershgorin_row(const ShellConfig& c, double l, std::span<const double> b, std::size_t k) {
  double s = 0.0;
  const double rk = c[k].radius;
  for (std::size_t j = 0; j < k; ++j) s += b[j] / b[k] * std::pow(c[j].radius / rk, l + 1.0);
  for (std::size_t j = k + 1; j < c.size(); ++j) s += b[j] / b[k] * std::pow(rk / c[j].radius, l);
  return s;
}

}  // namespace

Certificate gershgorin_classify(const ShellConfig& config, double l, std::span<const double> weights,
                                std::span<const std::size_t> omega_plus) {
  require_matrix_channel(l);
  require_attractive(config);
  const std::size_t n = config.size();
  if (weights.size() != n) throw DomainError("one weight per shell is required");
  for (double b : weights)
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("weights must be positive");
  std::vector<bool> plus(n, false);
  for (std::size_t k : omega_plus) {
    if (k >= n) throw DomainError("index in omega_plus out of range");
    if (plus[k]) throw DomainError("duplicate index in omega_plus");
    plus[k] = true;
  }
  const double w = 2.0 * l + 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lhs = w / -config[k].strength;
    const double s = gershgorin_row(config, l, weights, k);
    const double rk = config[k].radius;
    const bool ok = plus[k] ? lhs < rk * (1.0 - s) : lhs >= rk * (1.0 + s);
    if (!ok) {
      return {fails("gershgorin", std::string(plus[k] ? "separation from below" : "separation from above") +
                                      " fails at shell " + std::to_string(k + 1)),
              std::nullopt};
    }
  }
  return {holds("gershgorin", "disks separate; kappa_- = " + std::to_string(omega_plus.size())), omega_plus.size()};
}

std::vector<double> two_state_weights(std::size_t n, double eps) {
  std::vector<double> b(n, n > 2 ? eps * eps / (2.0 * static_cast<double>(n - 2)) : 0.0);
  if (n > 0) b[0] = 1.0;
  if (n > 1) b[1] = eps * (2.0 - eps) / 2.0;
  return b;
}

Certificate epsilon_two_state_check(const ShellConfig& config, double l, double eps) {
  require_matrix_channel(l);
  require_attractive(config);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const std::size_t n = config.size();
  const std::string id = "two-state";
  if (n < 3) return {fails(id, "needs at least three shells"), std::nullopt};
  const double nn = static_cast<double>(n);
  const auto r = [&](std::size_t k) { return config[k].radius; };
  if (!(std::pow(r(0) / r(1), l + 1.0) < eps * eps * (1.0 - eps) / 2.0))
    return {fails(id, "(r_1/r_2)^{l+1} too large"), std::nullopt};
  if (!(std::pow(r(0) / r(2), l + 1.0) < eps * eps * eps / (6.0 * nn)))
    return {fails(id, "(r_1/r_3)^{l+1} too large"), std::nullopt};
  if (!(std::pow(r(1) / r(2), l + 1.0) < eps * eps / (6.0 * nn)))
    return {fails(id, "(r_2/r_3)^{l+1} too large"), std::nullopt};
  // The ratio test runs over consecutive pairs from the third shell on.
  for (std::size_t k = 2; k + 1 < n; ++k)
    if (!(std::pow(r(k) / r(k + 1), l) <= eps / (3.0 * nn)))
      return {fails(id, "(r_k/r_{k+1})^l too large at k = " + std::to_string(k + 1)), std::nullopt};
  const double w = 2.0 * l + 1.0;
  for (std::size_t k = 0; k < 2; ++k)
    if (!(w / -config[k].strength < r(k) * (1.0 - eps)))
      return {fails(id, "shell " + std::to_string(k + 1) + " is not strong enough"), std::nullopt};
  for (std::size_t k = 2; k < n; ++k)
    if (!(w / -config[k].strength >= r(k) * (1.0 + eps)))
      return {fails(id, "shell " + std::to_string(k + 1) + " is too strong"), std::nullopt};
  return {holds(id, "hypotheses met; kappa_- = 2"), 2};
}

MatrixBargmannReport matrix_bargmann(const ShellConfig& config, double l) {
  require_matrix_channel(l);
  require_attractive(config);
  const std::size_t n = config.size();
  const double w = 2.0 * l + 1.0;
  MatrixBargmannReport out;
  out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double trace = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double aj = -config[j].strength, rj = config[j].radius;
    const auto jj = static_cast<Eigen::Index>(j);
    out.matrix(jj, jj) = rj * aj;
    trace += rj * aj;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double ak = -config[k].strength, rk = config[k].radius;
      const auto kk = static_cast<Eigen::Index>(k);
      out.matrix(jj, kk) = out.matrix(kk, jj) = std::pow(rj, l + 1.0) * std::pow(rk, -l) * std::sqrt(aj * ak);
    }
  }
  out.norm = symmetric_norm(out.matrix);
  const double slack = default_tolerance(out.matrix);
  if (out.norm <= w + slack)
    out.norm_check = holds("matrix-norm", "||M|| = " + fmt(out.norm) + " <= 2l+1 = " + fmt(w) + ", kappa_- = 0");
  else
    out.norm_check = fails("matrix-norm", "||M|| = " + fmt(out.norm) + " > 2l+1 = " + fmt(w) + ", kappa_- >= 1");

  out.bound = trace / w;
  if (trace <= w)
    out.trace_check = holds("jost-pais", "sum |alpha_k| r_k = " + fmt(trace) + " <= 2l+1, kappa_- = 0");
  else
    out.trace_check = fails("jost-pais", "sum |alpha_k| r_k = " + fmt(trace) + " > 2l+1; kappa_- < " + fmt(out.bound));

  out.gershgorin_positivity = holds("gershgorin-positivity", "every row test holds, kappa_- = 0");
  for (std::size_t k = 0; k < n; ++k) {
    const double rk = config[k].radius;
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += std::pow(config[j].radius, l + 1.0) * std::pow(rk, -l);
    for (std::size_t j = k; j < n; ++j) s += rk * std::pow(rk / config[j].radius, l);
    if (!(1.0 / -config[k].strength >= s / w)) {
      out.first_failing = k;
      out.gershgorin_positivity =
          fails("gershgorin-positivity", "row test fails at shell " + std::to_string(k + 1) + "; does not decide kappa_-");
      break;
    }
  }
  return out;
}

KacKreinReport kac_krein_check(const AtomicMeasure& measure) {
  KacKreinReport out;
  double tail = 0.0;
  const auto atoms = measure.atoms();
  for (std::size_t i = atoms.size(); i-- > 0;) {
    tail += atoms[i].weight;
    out.sup_value = std::max(out.sup_value, atoms[i].position * tail);
  }
  const std::string s = "S = " + fmt(out.sup_value);
  if (out.sup_value <= 0.25) {
    out.sufficient = holds("kac-krein-sufficient", s + " <= 1/4, kappa_- = 0");
    out.necessary = holds("kac-krein-necessary", s + " <= 1");
  } else if (out.sup_value > 1.0) {
    out.sufficient = fails("kac-krein-sufficient", s + " > 1/4");
    out.necessary = fails("kac-krein-necessary", s + " > 1, kappa_- = 0 is excluded");
  } else {
    out.sufficient = inconclusive("kac-krein-sufficient", s + " lies in (1/4, 1]");
    out.necessary = inconclusive("kac-krein-necessary", s + " lies in (1/4, 1]");
  }
  return out;
}

}  // namespace deltashell
