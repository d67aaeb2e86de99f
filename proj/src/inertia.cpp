#include "deltashell/inertia.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace deltashell {

Tridiagonal tridiagonalize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix must be square");
  const Eigen::Index n = m.rows();
  Tridiagonal t;
  if (n <= 2) {
    t.diag = m.diagonal();
    t.sub = n == 2 ? Eigen::VectorXd::Constant(1, 0.5 * (m(1, 0) + m(0, 1))) : Eigen::VectorXd();
    return t;
  }
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(m);
  t.diag = tri.diagonal();
  t.sub = tri.subDiagonal();
  return t;
}

namespace {

double pivot_floor(const Tridiagonal& t) {
  double b2 = 0.0;
  for (Eigen::Index i = 0; i < t.sub.size(); ++i) b2 = std::max(b2, t.sub[i] * t.sub[i]);
  return std::numeric_limits<double>::min() * std::max(1.0, b2);
}

// sign = +1 counts eigenvalues of T below sigma, sign = -1 counts those of -T below -sigma.
std::size_t sturm(const Tridiagonal& t, double sigma, double sign) {
  const std::size_t n = t.size();
  if (n == 0) return 0;
  const double floor = pivot_floor(t);
  std::size_t count = 0;
  double q = sign * t.diag[0] - sigma;
  for (std::size_t i = 0;; ++i) {
    // An exact zero pivot means sigma is an eigenvalue of the leading block; nudging it
    // positive keeps that eigenvalue out of the strict count.
    if (std::abs(q) < floor) q = floor;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    const double b = t.sub[static_cast<Eigen::Index>(i)];
    q = sign * t.diag[static_cast<Eigen::Index>(i + 1)] - sigma - b * b / q;
  }
  return count;
}

}  // namespace

std::size_t count_below(const Tridiagonal& t, double sigma) { return sturm(t, sigma, 1.0); }

std::size_t count_above(const Tridiagonal& t, double sigma) { return sturm(t, -sigma, -1.0); }

double kth_eigenvalue(const Tridiagonal& t, std::size_t k) {
  const std::size_t n = t.size();
  if (k >= n) throw DomainError("eigenvalue index out of range");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.sub[static_cast<Eigen::Index>(i - 1)]);
    if (i + 1 < n) r += std::abs(t.sub[static_cast<Eigen::Index>(i)]);
    lo = std::min(lo, t.diag[static_cast<Eigen::Index>(i)] - r);
    hi = std::max(hi, t.diag[static_cast<Eigen::Index>(i)] + r);
  }
  const double pad = 1e-300 + 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  lo -= pad;
  hi += pad;
  // Invariant: count_below(lo) <= k < count_below(hi).
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double default_tolerance(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const double norm_inf = m.cwiseAbs().rowwise().sum().maxCoeff();
  return static_cast<double>(m.rows()) * 32.0 * std::numeric_limits<double>::epsilon() * norm_inf;
}

InertiaReport inertia(const Eigen::MatrixXd& m) { return inertia(m, default_tolerance(m)); }

InertiaReport inertia(const Eigen::MatrixXd& m, double tol) {
  if (!(tol >= 0.0)) throw DomainError("tolerance must be nonnegative");
  const Tridiagonal t = tridiagonalize(m);
  InertiaReport out;
  out.tolerance = tol;
  out.kappa_minus = count_below(t, -tol);
  out.kappa_plus = count_above(t, tol);
  out.kappa_zero = t.size() - out.kappa_minus - out.kappa_plus;
  return out;
}

double symmetric_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Tridiagonal t = tridiagonalize(m);
  const double lo = kth_eigenvalue(t, 0);
  const double hi = kth_eigenvalue(t, t.size() - 1);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace deltashell
