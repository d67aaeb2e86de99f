#pragma once

// Test-side helpers and reference counters written independently of the library.

#include <cmath>
#include <random>
#include <vector>

#include "deltashell/model.hpp"

namespace testing {

struct RandomShells {
  std::vector<double> radii;
  std::vector<double> strengths;
};

// Radii sorted uniform in (0, rmax), strengths uniform in [lo, hi].
inline RandomShells random_shells(std::mt19937_64& gen, std::size_t n, double rmax, double lo, double hi) {
  std::uniform_real_distribution<double> ur(0.0, rmax), ua(lo, hi);
  RandomShells s;
  while (s.radii.size() < n) {
    const double r = ur(gen);
    if (r <= 0.0) continue;
    bool clash = false;
    for (double q : s.radii) clash = clash || std::abs(q - r) < 1e-9;
    if (!clash) s.radii.push_back(r);
  }
  std::sort(s.radii.begin(), s.radii.end());
  for (std::size_t i = 0; i < n; ++i) {
    double a = ua(gen);
    while (a == 0.0) a = ua(gen);
    s.strengths.push_back(a);
  }
  return s;
}

inline deltashell::ShellConfig to_config(const RandomShells& s) { return deltashell::make_config(s.radii, s.strengths); }

// Zeros of the regular zero-energy solution, by shooting in (u, u') with long double.
// Between shells u = A r^{l+1} + B r^{-l} (or sqrt(r)(A + B log r) at l = -1/2) is
// refit from the value and slope at the left end.
inline std::size_t reference_zero_count(const std::vector<double>& radii, const std::vector<double>& strengths,
                                        double l_in) {
  using R = long double;
  const R l = l_in;
  const bool log_case = l_in == -0.5;
  std::size_t zeros = 0;
  R A = 1, B = 0;  // u = r^{l+1} near 0
  auto value = [&](R r) {
    return log_case ? std::sqrt(r) * (A + B * std::log(r)) : A * std::pow(r, l + 1) + B * std::pow(r, -l);
  };
  auto slope = [&](R r) {
    if (log_case) return (A + B * std::log(r)) / (2 * std::sqrt(r)) + B / std::sqrt(r);
    return (l + 1) * A * std::pow(r, l) - l * B * std::pow(r, -l - 1);
  };
  auto refit = [&](R r, R u, R du) {
    if (log_case) {
      // [sqrt r, sqrt r log r] and derivatives; Wronskian is 1.
      const R s = std::sqrt(r), lg = std::log(r);
      const R f1 = s, d1 = 1 / (2 * s), f2 = s * lg, d2 = lg / (2 * s) + 1 / s;
      A = u * d2 - du * f2;
      B = du * f1 - u * d1;
    } else {
      const R f1 = std::pow(r, l + 1), d1 = (l + 1) * std::pow(r, l);
      const R f2 = std::pow(r, -l), d2 = -l * std::pow(r, -l - 1);
      const R w = f1 * d2 - d1 * f2;  // -(2l+1)
      A = (u * d2 - du * f2) / w;
      B = (du * f1 - u * d1) / w;
    }
  };
  // A root of u strictly inside (a, b); u has at most one zero per free interval.
  auto interior_zero = [&](R a, R b) {
    if (A == 0 && B == 0) return false;
    if (log_case) {
      if (B == 0) return false;
      const R z = std::exp(-A / B);
      return z > a && z < b;
    }
    if (A == 0 || B == 0) return false;
    const R t = -B / A;  // r^{2l+1} = t
    if (t <= 0) return false;
    const R z = std::pow(t, 1 / (2 * l + 1));
    return z > a && z < b;
  };
  R left = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const R r = radii[k];
    if (interior_zero(left, r)) ++zeros;
    const R u = value(r);
    if (u == 0) ++zeros;
    const R du = slope(r) + R(strengths[k]) * u;
    refit(r, u, du);
    left = r;
  }
  if (interior_zero(left, INFINITY)) ++zeros;
  return zeros;
}

}  // namespace testing
