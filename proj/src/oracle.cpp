#include "deltashell/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "deltashell/inertia.hpp"

namespace deltashell {

namespace {

constexpr double kFlagTol = 1e-12;
constexpr double kShift = 1e-9;

void check_l(double l) {
  if (!(l >= -0.5) || !std::isfinite(l)) throw DomainError("l must be finite and >= -1/2");
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

struct Propagation {
  std::size_t count = 0;
  bool flagged = false;
};

// Carries P = u and Q = r u' from shell to shell in coordinates local to the current shell,
// so nothing overflows however wide the radii spread.
Propagation propagate(const ShellConfig& config, double l, double shift) {
  Propagation out;
  if (config.empty()) return out;
  const bool log_case = l == -0.5;
  const double w = 2.0 * l + 1.0;
  double p = 1.0;
  double q = log_case ? 0.5 : l + 1.0;
  int current = 1;
  const std::size_t n = config.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const double rho = config[k].radius / config[k - 1].radius;
      double np, nq;
      if (log_case) {
        const double a = p, b = q - 0.5 * p;
        const double lr = std::log(rho), sr = std::sqrt(rho);
        np = sr * (a + b * lr);
        nq = sr * (0.5 * (a + b * lr) + b);
      } else {
        const double a = (l * p + q) / w, b = ((l + 1.0) * p - q) / w;
        const double up = std::pow(rho, l + 1.0), down = std::pow(rho, -l);
        np = a * up + b * down;
        nq = (l + 1.0) * a * up - l * b * down;
      }
      const double scale = std::max(std::abs(np), std::abs(nq));
      p = np / scale;
      q = nq / scale;
    }
    if (std::abs(p) <= kFlagTol * std::max(std::abs(p), std::abs(q))) out.flagged = true;
    if (p == 0.0) {
      ++out.count;
      current = sign(q);
    } else if (sign(p) != current) {
      ++out.count;
      current = sign(p);
    }
    q += (config[k].strength + shift) * config[k].radius * p;
    const double scale = std::max(std::abs(p), std::abs(q));
    p /= scale;
    q /= scale;
  }
  // Last interval: u tends to the sign of the growing coefficient.
  const double lead = log_case ? q - 0.5 * p : (l * p + q) / w;
  if (std::abs(lead) <= kFlagTol * std::max(std::abs(p), std::abs(q))) out.flagged = true;
  if (lead != 0.0 && sign(lead) != current) ++out.count;
  return out;
}

}  // namespace

std::size_t PiecewiseSolution::interval_of(double r) const {
  return static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), r) - radii.begin());
}

double PiecewiseSolution::value(double r, std::size_t k) const {
  if (l == -0.5) return std::sqrt(r) * (a[k] + b[k] * std::log(r));
  return a[k] * std::pow(r, l + 1.0) + b[k] * std::pow(r, -l);
}

double PiecewiseSolution::derivative(double r, std::size_t k) const {
  if (l == -0.5) {
    const double sr = std::sqrt(r);
    return (a[k] + b[k] * std::log(r)) / (2.0 * sr) + b[k] / sr;
  }
  return a[k] * (l + 1.0) * std::pow(r, l) - b[k] * l * std::pow(r, -l - 1.0);
}

PiecewiseSolution zero_energy_solution(const ShellConfig& config, double l) {
  check_l(l);
  PiecewiseSolution s;
  s.l = l;
  s.radii = config.radii();
  s.a.assign(1, 1.0);
  s.b.assign(1, 0.0);
  for (std::size_t k = 0; k < config.size(); ++k) {
    const double r = config[k].radius;
    const double jump = config[k].strength * s.value(r, k);
    double da, db;
    if (l == -0.5) {
      db = jump * std::sqrt(r);
      da = -db * std::log(r);
    } else {
      da = jump * std::pow(r, -l) / (2.0 * l + 1.0);
      db = -jump * std::pow(r, l + 1.0) / (2.0 * l + 1.0);
    }
    s.a.push_back(s.a.back() + da);
    s.b.push_back(s.b.back() + db);
  }
  return s;
}

OscillationResult oscillation_analysis(const ShellConfig& config, double l) {
  check_l(l);
  const Propagation base = propagate(config, l, 0.0);
  OscillationResult out;
  out.count = base.count;
  out.flagged = base.flagged;
  if (base.flagged) {
    out.count_more_attractive = propagate(config, l, -kShift).count;
    out.count_less_attractive = propagate(config, l, kShift).count;
  } else {
    out.count_more_attractive = out.count_less_attractive = base.count;
  }
  return out;
}

std::size_t oscillation_count(const ShellConfig& config, double l) {
  check_l(l);
  return propagate(config, l, 0.0).count;
}

std::size_t fd_count(const ShellConfig& config, double l, double length, double mesh) {
  check_l(l);
  if (!(mesh > 0.0) || !std::isfinite(mesh)) throw DomainError("mesh width must be positive");
  const double last = config.empty() ? 0.0 : config[config.size() - 1].radius;
  if (!(length > last) || !std::isfinite(length)) throw DomainError("domain cut must exceed the last radius");

  // Breakpoints 0 = r_0 < r_1 < ... < r_N < L.
  std::vector<double> breaks{0.0};
  for (const auto& s : config.shells()) breaks.push_back(s.radius);
  breaks.push_back(length);
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (breaks[i] - breaks[i - 1] < mesh) throw MeshTooCoarse("a gap between shells is narrower than the mesh");

  std::vector<double> nodes{0.0};
  std::vector<double> alpha_at{0.0};
  for (std::size_t g = 1; g < breaks.size(); ++g) {
    const double gap = breaks[g] - breaks[g - 1];
    const auto cells = static_cast<std::size_t>(std::ceil(gap / mesh));
    for (std::size_t c = 1; c <= cells; ++c) {
      nodes.push_back(c == cells ? breaks[g] : breaks[g - 1] + gap * static_cast<double>(c) / cells);
      alpha_at.push_back(c == cells && g + 1 < breaks.size() ? config[g - 1].strength : 0.0);
    }
  }
  // Unknowns are the interior nodes 1..M-1; u(0) = u(L) = 0.
  const std::size_t m = nodes.size() - 2;
  Tridiagonal t;
  t.diag.resize(static_cast<Eigen::Index>(m));
  t.sub.resize(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
  const double ll = l * (l + 1.0);
  for (std::size_t i = 1; i <= m; ++i) {
    const double hl = nodes[i] - nodes[i - 1];
    const double hr = nodes[i + 1] - nodes[i];
    double potential = ll / (nodes[i] * nodes[i]) * 0.5 * (hl + hr);
    if (i == 1 && l < 0.5) {
      // Pick the row-1 coefficient so that u = r^{l+1} solves the discrete equation there.
      const double u1 = std::pow(hl, l + 1.0), u2 = std::pow(hl + hr, l + 1.0);
      potential = (u2 / hr - u1 * (1.0 / hl + 1.0 / hr)) / u1;
    }
    t.diag[static_cast<Eigen::Index>(i - 1)] = 1.0 / hl + 1.0 / hr + potential + alpha_at[i];
    if (i < m) t.sub[static_cast<Eigen::Index>(i - 1)] = -1.0 / hr;
  }
  return count_below(t, 0.0);
}

}  // namespace deltashell
