#include "deltashell/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace deltashell {

Eigen::MatrixXd JacobiMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diagonal[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off_diagonal[static_cast<std::size_t>(i)];
  return m;
}

std::optional<std::size_t> available_shells(const ShellConfig& head, const TailModel& tail) {
  validate_tail(head, tail);
  if (std::holds_alternative<FiniteTail>(tail)) return head.size();
  if (const auto* s = std::get_if<SampledTail>(&tail)) return s->horizon;
  return std::nullopt;
}

ShellSequence shell_sequence(const ShellConfig& head, const TailModel& tail, std::size_t count) {
  const auto avail = available_shells(head, tail);
  if (avail && count > *avail)
    throw InsufficientShells("family provides " + std::to_string(*avail) + " shells, " + std::to_string(count) +
                             " requested");
  ShellSequence seq;
  seq.radii.reserve(count);
  seq.spacings.reserve(count);
  seq.strengths.reserve(count);
  double prev = 0.0;
  auto push = [&](double d, double a) {
    prev += d;
    seq.radii.push_back(prev);
    seq.spacings.push_back(d);
    seq.strengths.push_back(a);
  };
  std::size_t k = 0;
  if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    for (k = 1; k <= count; ++k) push(1.0 / static_cast<double>(k), h->strength(k));
    return seq;
  }
  if (const auto* s = std::get_if<SampledTail>(&tail)) {
    for (k = 1; k <= count; ++k) {
      const double d = s->spacing(k);
      if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("sampled spacing must be positive");
      push(d, s->strength(k));
    }
    return seq;
  }
  for (; k < std::min(count, head.size()); ++k) push(head[k].radius - prev, head[k].strength);
  if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    for (std::size_t j = 0; k < count; ++k, ++j) push(p->spacings[j % p->spacings.size()], p->strengths[j % p->strengths.size()]);
  }
  return seq;
}

JacobiMatrix build_jacobi(const ShellConfig& head, const TailModel& tail, std::size_t rows) {
  const ShellSequence seq = shell_sequence(head, tail, rows + 1);
  const auto& d = seq.spacings;
  JacobiMatrix j;
  j.diagonal.resize(rows);
  j.off_diagonal.resize(rows > 0 ? rows - 1 : 0);
  std::vector<double> p(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    p[k] = std::sqrt(d[k] + d[k + 1]);
    j.diagonal[k] = (seq.strengths[k] + 1.0 / d[k] + 1.0 / d[k + 1]) / (p[k] * p[k]);
  }
  for (std::size_t k = 0; k + 1 < rows; ++k) j.off_diagonal[k] = -1.0 / (p[k] * p[k + 1] * d[k + 1]);
  return j;
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Asymptotic bookkeeping for sequences x_k = sum c_i k^{p_i} + O(k^{-decay}).
struct Term {
  double coeff;
  double power;
};

enum class Eventual { Positive, Negative, Small, Unknown };

std::vector<Term> merge(const std::vector<Term>& terms) {
  std::map<double, double> by_power;
  for (const auto& t : terms) by_power[t.power] += t.coeff;
  std::vector<Term> out;
  for (auto [p, c] : by_power)
    if (c != 0.0) out.push_back({c, p});
  return out;
}

// Positive / Negative: a term above `threshold` dominates and fixes the eventual sign.
// Small: |x_k| = O(k^threshold). Unknown: the remainder may dominate.
Eventual classify(const std::vector<Term>& raw, double decay, double threshold) {
  const auto terms = merge(raw);
  const Term* lead = nullptr;
  for (const auto& t : terms)
    if (t.power > threshold && (!lead || t.power > lead->power)) lead = &t;
  if (lead) {
    if (lead->power > -decay) return lead->coeff > 0.0 ? Eventual::Positive : Eventual::Negative;
    return Eventual::Unknown;
  }
  return -decay <= threshold ? Eventual::Small : Eventual::Unknown;
}

bool all_powers_below(const std::vector<Term>& raw, double bound) {
  for (const auto& t : merge(raw))
    if (!(t.power < bound)) return false;
  return true;
}

bool all_powers_at_most(const std::vector<Term>& raw, double bound) {
  for (const auto& t : merge(raw))
    if (!(t.power <= bound)) return false;
  return true;
}

std::vector<Term> harmonic_terms(const HarmonicTail& h, double shift_a) {
  // alpha_k + shift_a (2k+1)
  const double a = shift_a - h.attraction;
  return {{2.0 * a, 1.0}, {a, 0.0}, {h.extra_coeff, h.extra_power}};
}

std::string harmonic_desc(const HarmonicTail& h) {
  std::ostringstream os;
  os << "alpha_k = -" << num(h.attraction) << "(2k+1)";
  if (h.extra_coeff != 0.0) os << " + " << num(h.extra_coeff) << " k^" << num(h.extra_power);
  if (std::isfinite(h.remainder_decay)) os << " + O(k^-" << num(h.remainder_decay) << ")";
  return os.str();
}

// Windowed sums over windows [r_i, r_i + width] starting at each shell.
std::vector<double> window_sums(const ShellSequence& s, double width, bool negative_part_only, bool absolute) {
  const std::size_t n = s.radii.size();
  std::vector<double> out(n, 0.0);
  std::size_t hi = 0;
  double acc = 0.0;
  auto weight = [&](std::size_t i) {
    const double a = s.strengths[i];
    if (negative_part_only) return a < 0.0 ? -a : 0.0;
    return absolute ? std::abs(a) : a;
  };
  for (std::size_t lo = 0; lo < n; ++lo) {
    if (hi < lo) {
      hi = lo;
      acc = 0.0;
    }
    while (hi < n && s.radii[hi] <= s.radii[lo] + width) acc += weight(hi++);
    out[lo] = acc;
    acc -= weight(lo);
  }
  return out;
}

std::string halves(const std::vector<double>& v, bool use_max) {
  if (v.empty()) return "no samples";
  const std::size_t mid = v.size() / 2;
  auto pick = [&](std::size_t a, std::size_t b) {
    if (a >= b) return v[a < v.size() ? a : v.size() - 1];
    return use_max ? *std::max_element(v.begin() + static_cast<long>(a), v.begin() + static_cast<long>(b))
                   : *std::min_element(v.begin() + static_cast<long>(a), v.begin() + static_cast<long>(b));
  };
  return std::string(use_max ? "max" : "min") + " over first half " + num(pick(0, std::max<std::size_t>(mid, 1))) +
         ", second half " + num(pick(mid, v.size()));
}

const SampledTail& sampled(const TailModel& t) { return std::get<SampledTail>(t); }

ShellSequence sampled_sequence(const ShellConfig& head, const TailModel& tail) {
  return shell_sequence(head, tail, sampled(tail).horizon);
}

}  // namespace

Verdict check_self_adjoint(const ShellConfig& head, const TailModel& tail) {
  validate_tail(head, tail);
  if (std::holds_alternative<FiniteTail>(tail))
    return holds("finite-family", "finitely many shells never destroy self-adjointness");
  if (std::holds_alternative<PeriodicTail>(tail))
    return holds("sum-d-squared", "periodic spacings give sum d_k^2 = infinity");

  if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    const double eps = h->remainder_decay;
    const auto alpha = harmonic_terms(*h, 0.0);
    const std::string d = harmonic_desc(*h);
    const Eventual big = classify(alpha, eps, 2.0 - 1e-12);
    if (big == Eventual::Positive || big == Eventual::Negative)
      return holds("harmonic-i", d + ": |alpha_k| grows like k^2 or faster, sum |alpha_k| k^-3 diverges");
    const Eventual excess = classify(harmonic_terms(*h, 2.0), eps, -1.0);
    if (excess == Eventual::Negative || excess == Eventual::Small)
      return holds("harmonic-ii", d + ": alpha_k <= -2(2k+1) + O(1/k)");
    const Eventual lower = classify(alpha, eps, -1.0);
    if (lower == Eventual::Positive || lower == Eventual::Small)
      return holds("harmonic-iii", d + ": alpha_k >= -C/k");
    if (h->attraction == 1.0 && eps > 0.0 && all_powers_below(harmonic_terms(*h, 1.0), 0.0))
      return fails("harmonic-iv", d + ": alpha_k = -(2k+1) + O(k^-eps); n_pm(B) = 1, n_pm(H) = infinite");
    if (h->attraction > 0.0 && h->attraction < 2.0 && eps >= 1.0 &&
        all_powers_at_most({{h->extra_coeff, h->extra_power}}, -1.0))
      return fails("harmonic-v", d + ": alpha_k = -A(2k+1) + O(1/k) with A in (0,2); n_pm(H) = infinite");
    return inconclusive("harmonic-undecided", d + ": none of the five harmonic cases applies");
  }

  const auto& s = sampled(tail);
  const auto& f = s.flags;
  if (f.sum_d_squared_diverges == true) return holds("sum-d-squared", "asserted: sum d_k^2 = infinity");
  if (f.sum_d_squared_diverges == false && f.jump_series_converges == true) {
    if (f.log_convex == true)
      return fails("log-convex-deficiency",
                   "asserted: sum d_k^2 < infinity, d_{k-1} d_{k+1} >= d_k^2 and the jump series converges; n_pm(B) = 1, "
                   "n_pm(H) = infinite");
    if (f.log_convex == false)
      return inconclusive("log-convex-deficiency", "log-convexity fails, so the deficiency test does not apply");
  }
  const ShellSequence seq = sampled_sequence(head, tail);
  double half = 0.0, full = 0.0;
  for (std::size_t k = 0; k < seq.spacings.size(); ++k) {
    full += seq.spacings[k] * seq.spacings[k];
    if (k < seq.spacings.size() / 2) half = full;
  }
  return inconclusive("sum-d-squared", "partial sums of d_k^2: " + num(half) + " at K/2, " + num(full) + " at K = " +
                                           std::to_string(seq.spacings.size()));
}

Verdict check_semibounded(const ShellConfig& head, const TailModel& tail) {
  validate_tail(head, tail);
  if (std::holds_alternative<FiniteTail>(tail)) return holds("brinck", "finitely many shells");

  if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    double period = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < p->spacings.size(); ++i) {
      period += p->spacings[i];
      if (p->strengths[i] < 0.0) mass -= p->strengths[i];
    }
    const double bound = mass * (std::ceil(1.0 / period) + 1.0);
    return holds("brinck", "a unit window meets boundedly many periods; windowed negative mass <= " + num(bound) +
                               " past the explicit shells");
  }

  if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    const std::string d = harmonic_desc(*h);
    switch (classify(harmonic_terms(*h, 0.0), h->remainder_decay, -1.0)) {
      case Eventual::Positive:
        return holds("brinck", d + ": strengths are eventually positive");
      case Eventual::Small:
        return holds("brinck", d + ": |alpha_k| = O(1/k) and a unit window holds O(k) shells");
      case Eventual::Negative:
        return fails("brinck-necessity", d + ": strengths are eventually negative and windowed sums diverge; "
                                             "changing finitely many shells does not affect semiboundedness");
      case Eventual::Unknown:
        break;
    }
    return inconclusive("brinck", d + ": remainder may dominate the windowed sums");
  }

  const auto& f = sampled(tail).flags;
  if (f.brinck_bounded == true) return holds("brinck", "asserted: windowed negative sums are bounded");
  if (f.brinck_bounded == false && f.attractive == true)
    return fails("brinck-necessity", "asserted: alpha = alpha^- and windowed negative sums are unbounded");
  const auto w = window_sums(sampled_sequence(head, tail), 1.0, true, false);
  return inconclusive("brinck", "windowed |alpha^-| sums over [r, r+1]: " + halves(w, true));
}

Verdict check_discrete(const ShellConfig& head, const TailModel& tail) {
  if (!check_semibounded(head, tail).holds())
    throw PrerequisiteNotMet("discreteness test needs the windowed negative sums to be bounded");
  if (std::holds_alternative<FiniteTail>(tail))
    return fails("discrete-windows", "windowed sums vanish eventually instead of diverging");
  if (std::holds_alternative<PeriodicTail>(tail))
    return fails("discrete-windows", "windowed sums are eventually periodic in r, hence bounded");

  if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    const std::string d = harmonic_desc(*h);
    switch (classify(harmonic_terms(*h, 0.0), h->remainder_decay, -1.0)) {
      case Eventual::Positive:
        return holds("discrete-windows", d + ": a window (r, r+eps) holds about (e^eps - 1)k shells, so the sums diverge");
      case Eventual::Small:
        return fails("discrete-windows", d + ": |alpha_k| = O(1/k) keeps every windowed sum bounded");
      default:
        break;
    }
    return inconclusive("discrete-windows", d + ": remainder may dominate the windowed sums");
  }

  const auto& f = sampled(tail).flags;
  if (f.windowed_sum_diverges == true) return holds("discrete-windows", "asserted: windowed sums tend to infinity");
  if (f.windowed_sum_diverges == false) return fails("discrete-windows", "asserted: windowed sums do not diverge");
  const ShellSequence seq = sampled_sequence(head, tail);
  std::string ev = "min windowed sums of alpha over (r, r+eps):";
  for (int j : {0, 5, 10, 20}) {
    const auto w = window_sums(seq, std::ldexp(1.0, -j), false, false);
    ev += " eps = 2^-" + std::to_string(j) + ": " + halves(w, false) + ";";
  }
  return inconclusive("discrete-windows", ev);
}

Verdict check_continuous_spectrum(const ShellConfig& head, const TailModel& tail) {
  validate_tail(head, tail);
  const std::string note = " (the condition is only sufficient; alpha_k -> 0 alone does not give it)";
  if (std::holds_alternative<FiniteTail>(tail)) return holds("vanishing-windows", "windowed sums are eventually 0");

  if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    if (std::all_of(p->strengths.begin(), p->strengths.end(), [](double a) { return a == 0.0; }))
      return holds("vanishing-windows", "periodic strengths are all zero");
    return inconclusive("vanishing-windows", "windowed sums of |alpha| do not vanish" + note);
  }

  if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    const std::string d = harmonic_desc(*h);
    if (all_powers_below(harmonic_terms(*h, 0.0), -1.0) && h->remainder_decay > 1.0)
      return holds("vanishing-windows", d + ": |alpha_k| = o(1/k) over windows of O(k) shells");
    return inconclusive("vanishing-windows", d + ": windowed sums do not certainly vanish" + note);
  }

  const auto& f = sampled(tail).flags;
  if (f.windowed_abs_vanishes == true) return holds("vanishing-windows", "asserted: windowed |alpha| sums tend to 0");
  const auto w = window_sums(sampled_sequence(head, tail), 1.0, false, true);
  return inconclusive("vanishing-windows", "windowed |alpha| sums over [r, r+1]: " + halves(w, true) + note);
}

}  // namespace deltashell
