#include <algorithm>
#include <cmath>
#include <numbers>

#include "deltashell/errors.hpp"
#include "deltashell/special.hpp"

namespace deltashell {

namespace {

void check_args(double l, double lambda, double r) {
  if (!(l >= -0.5) || !std::isfinite(l)) throw DomainError("l must be finite and >= -1/2");
  if (!(lambda <= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be finite and <= 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
}

// log of Gamma(nu+1) 2^nu, the normalization tying phi to I_nu.
double log_norm(double nu) { return std::lgamma(nu + 1.0) + nu * std::numbers::ln2; }

}  // namespace

ChannelPair channel_pair(double l, double lambda, double r) {
  check_args(l, lambda, r);
  ChannelPair out{};
  if (lambda == 0.0) {
    out.phi = std::pow(r, l + 1.0);
    out.dphi = (l + 1.0) * std::pow(r, l);
    if (l == -0.5) {
      const double lg = std::log(r);
      const double sr = std::sqrt(r);
      const double sign = lg < 0.0 ? -1.0 : 1.0;
      out.psi = sr * std::abs(lg);
      out.dpsi = sign * (0.5 * lg + 1.0) / sr;
    } else {
      out.psi = std::pow(r, -l) / (2.0 * l + 1.0);
      out.dpsi = -l * std::pow(r, -l - 1.0) / (2.0 * l + 1.0);
    }
    return out;
  }
  const double kappa = std::sqrt(-lambda);
  const double nu = l + 0.5;
  const BesselIK b = bessel_ik(nu, kappa * r);
  const double c = log_norm(nu) - nu * std::log(kappa);
  const double half = 0.5 * std::log(r);
  out.phi = std::exp(c + half + b.log_i);
  out.psi = std::exp(-c + half + b.log_k);
  // Both forms below add terms of one sign, so nothing cancels at small kappa r.
  out.dphi = out.phi * ((l + 1.0) / r + kappa * b.i_up);
  out.dpsi = -out.psi * (l / r + kappa * b.k_down);
  return out;
}

double phi_l(double l, double lambda, double r) {
  check_args(l, lambda, r);
  if (lambda == 0.0) return std::pow(r, l + 1.0);
  return channel_pair(l, lambda, r).phi;
}

double psi_l(double l, double lambda, double r) { return channel_pair(l, lambda, r).psi; }
double dphi_l(double l, double lambda, double r) { return channel_pair(l, lambda, r).dphi; }
double dpsi_l(double l, double lambda, double r) { return channel_pair(l, lambda, r).dpsi; }

double green_kernel(double l, double lambda, double r, double s) {
  check_args(l, lambda, r);
  check_args(l, lambda, s);
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  if (lambda == 0.0) {
    if (lo == hi && l > -0.5) return lo / (2.0 * l + 1.0);
    return phi_l(l, 0.0, lo) * psi_l(l, 0.0, hi);
  }
  // I K at one argument from the Wronskian and the K recurrence: every term is positive,
  // whereas exp(log I + log K) loses |log K| ulps to cancellation at small x.
  const double kappa = std::sqrt(-lambda);
  const double nu = l + 0.5;
  const double x = kappa * lo;
  const BesselIK b = bessel_ik(nu, x);
  const double ik = 1.0 / (x * b.k_down + (2.0 * l + 1.0) + x * b.i_up);
  if (lo == hi) return lo * ik;
  const double ratio = std::exp(bessel_ik(nu, kappa * hi).log_k - b.log_k);
  return std::sqrt(lo * hi) * ik * ratio;
}

}  // namespace deltashell
