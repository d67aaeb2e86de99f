#include "deltashell/multidim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "deltashell/jacobi.hpp"
#include "deltashell/negcount.hpp"

namespace deltashell {

namespace {

std::size_t binom(long top, long bottom) {
  if (bottom < 0 || top < bottom) return 0;
  double r = 1.0;
  for (long i = 1; i <= bottom; ++i) r = r * static_cast<double>(top - bottom + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(r));
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double negative_moment(const ShellConfig& c) {
  double s = 0.0;
  for (const auto& sh : c.shells())
    if (sh.strength < 0.0) s -= sh.strength * sh.radius;
  return s;
}

Verdict lift(const Verdict& v, std::string_view prefix) {
  return {v.status, std::string(prefix) + "/" + v.criterion, v.evidence};
}

}  // namespace

std::size_t channel_multiplicity(int n, int ell) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (ell < 0) throw DomainError("angular number must be nonnegative");
  return binom(ell + n - 1, n - 1) - binom(ell + n - 3, n - 1);
}

TotalResult total_bound_states(const ShellConfig& config, int n, std::optional<int> max_ell,
                               std::optional<double> tol) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const double i0 = negative_moment(config);
  TotalResult out;
  for (int ell = 0;; ++ell) {
    const double l = effective_l(n, ell);
    if (i0 <= 2.0 * l + 1.0) {
      out.ledger.truncation_l = ell;
      out.ledger.truncation_reason = "sum |alpha^-| r = " + num(i0) + " <= 2 l_eff + 1 = " + num(2.0 * l + 1.0) +
                                     " at channel " + std::to_string(ell);
      break;
    }
    if (max_ell && ell > *max_ell) {
      out.ledger.truncation_l = ell;
      out.ledger.truncation_reason = "stopped by channel limit " + std::to_string(*max_ell) + " before the cutoff";
      out.ledger.certified = false;
      break;
    }
    const CountResult c = count_bound_states(config, ChannelSpec::angular(n, ell), tol);
    const std::size_t mult = channel_multiplicity(n, ell);
    out.ledger.entries.push_back({ell, l, mult, c.count, c.degenerate, c.alternative});
    out.total += mult * c.count;
    out.degenerate = out.degenerate || c.degenerate;
  }
  return out;
}

AggregateBounds aggregate_bounds(const ShellConfig& config, int n) {
  if (n != 2 && n != 3) throw UnsupportedDimension("aggregate bounds exist for n = 2 and n = 3 only");
  AggregateBounds out{};
  out.i0 = negative_moment(config);
  out.i_log = 0.0;
  for (const auto& sh : config.shells())
    if (sh.strength < 0.0) out.i_log += std::abs(sh.strength * sh.radius * std::log(sh.radius));
  const double f0 = std::floor(out.i0);
  double sum = 0.0;
  if (n == 3) {
    for (long ell = 0; 2 * ell + 1 <= out.i0; ++ell) {
      const double w = 2.0 * static_cast<double>(ell) + 1.0;
      sum += w * std::floor(out.i0 / w);
    }
    out.channel_sum = sum;
    out.channel_sum_id = "n3-channel-sum";
    out.closed_form = f0 * (f0 + 1.0) / 2.0;
    out.closed_form_id = "n3-closed-form";
    out.certified = true;
  } else {
    for (long ell = 1; 2 * ell <= out.i0; ++ell) sum += 2.0 * std::floor(out.i0 / (2.0 * static_cast<double>(ell)));
    out.channel_sum = std::floor(out.i_log) + sum;
    out.channel_sum_id = "n2-channel-sum";
    out.closed_form = std::floor(out.i_log) + (f0 >= 1.0 ? f0 * std::log(f0) : 0.0);
    out.closed_form_id = "n2-log-form";
    out.certified = false;
  }
  return out;
}

MultidimReport multidim_verdicts(const ShellConfig& head, const TailModel& tail, int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const Verdict sa = check_self_adjoint(head, tail);
  const Verdict sb = check_semibounded(head, tail);
  MultidimReport out;

  out.semibounded = lift(sb, "semibounded-iff-jacobi");
  if (sa.holds()) {
    out.self_adjoint = lift(sa, "self-adjoint-iff-jacobi");
  } else if (sa.fails()) {
    if (sb.holds()) throw std::logic_error("semibounded family reported as not self-adjoint");
    out.self_adjoint = lift(sa, "self-adjoint-iff-jacobi");
    out.self_adjoint.evidence += "; n_pm(H) = infinite";
    out.deficiency_infinite = true;
  } else if (sb.holds()) {
    out.self_adjoint = holds("glazman-povzner", "lower semibounded, hence self-adjoint (" + sb.evidence + ")");
  } else {
    out.self_adjoint = lift(sa, "self-adjoint-iff-jacobi");
  }

  if (sb.holds()) {
    const Verdict cs = check_continuous_spectrum(head, tail);
    out.essential_spectrum = cs.holds() ? holds("essential-spectrum/" + cs.criterion, "sigma_ess(H) = [0, inf): " + cs.evidence)
                                        : inconclusive("essential-spectrum/" + cs.criterion, cs.evidence);
  } else {
    out.essential_spectrum =
        inconclusive("essential-spectrum", "needs bounded windowed negative sums, which are not established");
  }

  if (!sb.holds()) {
    out.discrete = inconclusive("discrete", "discreteness is decided only for semibounded families");
  } else if (std::holds_alternative<FiniteTail>(tail)) {
    out.discrete = fails("discrete", "finitely many shells: sigma_ess(H) = [0, inf)");
  } else if (std::holds_alternative<PeriodicTail>(tail)) {
    out.discrete = fails("discrete", "spacings do not tend to 0, so no channel has discrete spectrum");
  } else {
    std::optional<bool> spacing_vanishes = true;
    if (const auto* s = std::get_if<SampledTail>(&tail)) spacing_vanishes = s->flags.spacing_vanishes;
    if (spacing_vanishes == false)
      out.discrete = fails("discrete", "asserted: spacings do not tend to 0");
    else if (!spacing_vanishes)
      out.discrete = inconclusive("discrete", "d_k -> 0 is not established");
    else
      out.discrete = lift(check_discrete(head, tail), "discrete");
  }
  return out;
}

}  // namespace deltashell
