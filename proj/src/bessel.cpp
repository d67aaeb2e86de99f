// Modified Bessel I_nu, K_nu for real nu >= 0.
// Temme's series below x = 2, Steed's continued fraction above, CF1 for I'/I, and the
// Hankel expansion once x is far beyond nu^2. Everything is carried in logs.

#include <cmath>
#include <limits>
#include <numbers>

#include "deltashell/errors.hpp"
#include "deltashell/special.hpp"

namespace deltashell {

namespace {

constexpr double kEps = 1e-16;
constexpr double kBig = 1e250;
constexpr double kLogBig = 575.6462732485114;  // log(1e250)
constexpr int kMaxIter = 200000;

// Taylor coefficients of 1/Gamma(z) = sum c_k z^k, k = 1..26.
constexpr double kInvGamma[26] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
void temme_gammas(double mu, double& gam1, double& gam2) {
  const double m2 = mu * mu;
  double odd = 0.0, even = 0.0, p = 1.0;
  for (int k = 0; k < 13; ++k) {
    even += kInvGamma[2 * k] * p;
    odd += kInvGamma[2 * k + 1] * p;
    p *= m2;
  }
  gam1 = -odd;
  gam2 = even;
}

// log of sum_k (+/-)^k a_k(nu) / x^k, the Hankel series.
double hankel_log_sum(double nu, double x, bool alternating) {
  const double m = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (m - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term) && k > 1) break;
    term = next;
    sum += alternating && (k % 2 == 1) ? -term : term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return std::log(sum);
}

BesselIK hankel(double nu, double x) {
  const double li = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
  const double lk = -x + 0.5 * std::log(std::numbers::pi / (2.0 * x));
  BesselIK out{};
  out.log_i = li + hankel_log_sum(nu, x, true);
  out.log_k = lk + hankel_log_sum(nu, x, false);
  const double i1 = li + hankel_log_sum(nu + 1.0, x, true);
  const double k1 = lk + hankel_log_sum(nu + 1.0, x, false);
  out.i_up = std::exp(i1 - out.log_i);
  out.di = out.i_up + nu / x;
  out.dk = nu / x - std::exp(k1 - out.log_k);
  out.k_down = std::exp(lk + hankel_log_sum(nu - 1.0, x, false) - out.log_k);
  return out;
}

// log I_nu(x) from the ascending series; every term is positive.
double log_i_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double t = 1.0, s = 1.0;
  for (int k = 1; k < 500; ++k) {
    t *= q / (k * (nu + k));
    s += t;
    if (t < kEps * s) break;
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + std::log(s);
}

// Temme's series for K_mu and K_{mu+1} / K_mu, |mu| <= 1/2, x < 2.
void temme(double mu, double x, double& log_kmu, double& g) {
  const double xi2 = 2.0 / x;
  const double x2 = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  double gam1, gam2;
  temme_gammas(mu, gam1, gam2);
  const double gampl = gam2 - mu * gam1;
  const double gammi = gam2 + mu * gam1;
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
    c *= d / i;
    p /= i - mu;
    q /= i + mu;
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  if (i > kMaxIter) throw DomainError("bessel_ik: Temme series did not converge");
  log_kmu = std::log(sum);
  g = sum1 * xi2 / sum;
}

}  // namespace

double inverse_gamma1p(double x) {
  double s = 0.0, p = 1.0;
  for (double c : kInvGamma) {
    s += c * p;
    p *= x;
  }
  return s;
}

BesselIK bessel_ik(double nu, double x) {
  if (!(nu >= 0.0) || !(x > 0.0) || !std::isfinite(nu) || !std::isfinite(x))
    throw DomainError("bessel_ik needs nu >= 0 and x > 0");
  if (x > 1000.0 + nu * nu) return hankel(nu, x);

  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  // CF1 for I_{nu+1} / I_nu = 1 / (2(nu+1)/x + 1 / (2(nu+2)/x + ...)), all terms positive.
  double up;
  {
    double f = 1e-300, c = f, d = 0.0;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      const double b = xi2 * (nu + i);
      d = 1.0 / (b + d);
      c = b + 1.0 / c;
      const double del = c * d;
      f *= del;
      if (std::abs(del - 1.0) < kEps) break;
    }
    if (i > kMaxIter) throw DomainError("bessel_ik: CF1 did not converge");
    up = f;
  }
  double h = nu * xi + up;
  const double di_nu = h;

  // Downward recurrence from nu to mu with rescaling; values are positive throughout.
  double ril = 1.0, ripl = h, log_scale = 0.0;
  {
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
      const double ritemp = fact * ril + ripl;
      fact -= xi;
      ripl = fact * ritemp + ril;
      ril = ritemp;
      if (ril > kBig) {
        ril /= kBig;
        ripl /= kBig;
        log_scale += kLogBig;
      }
    }
  }
  const double f_mu = ripl / ril;
  // log(I_nu / I_mu) = -(log ril + log_scale), since ril started at 1.
  const double log_ratio_i = -(std::log(ril) + log_scale);

  double log_kmu, g;  // g = K_{mu+1} / K_mu
  if (x < 2.0) {
    temme(mu, x, log_kmu, g);
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double hh = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2.0 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      hh += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw DomainError("bessel_ik: CF2 did not converge");
    hh *= a1;
    log_kmu = 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x - std::log(s);
    g = (mu + x + 0.5 - hh) * xi;
  }

  // Wronskian I K' - I' K = -1/x fixes I_mu.
  const double dk_mu = mu * xi - g;
  const double log_imu = -std::log(x) - log_kmu - std::log(f_mu - dk_mu);

  // Forward recurrence for K from mu to nu, carried as a scaled pair.
  double km = 0.0, k0 = 1.0, k1 = g, klog = 0.0;
  for (int i = 1; i <= nl; ++i) {
    const double kt = (mu + i) * xi2 * k1 + k0;
    km = k0;
    k0 = k1;
    k1 = kt;
    if (k1 > kBig) {
      km /= kBig;
      k0 /= kBig;
      k1 /= kBig;
      klog += kLogBig;
    }
  }

  BesselIK out{};
  out.log_i = log_imu + log_ratio_i;
  if (x < 2.0) {
    // The Wronskian step above cancels like 1/x for small x; the series does not.
    out.log_i = log_i_series(nu, x);
    out.i_up = std::exp(log_i_series(nu + 1.0, x) - out.log_i);
    out.di = nu * xi + out.i_up;
  }
  out.log_k = log_kmu + std::log(k0) + klog;
  out.di = di_nu;
  out.i_up = up;
  out.dk = nu * xi - k1 / k0;
  if (nl >= 1) {
    out.k_down = km / k0;
  } else if (x < 2.0) {
    // K_{mu-1} = K_{1-mu}; Temme at -mu gives it without the 2 mu / x cancellation.
    double unused, gm;
    temme(-mu, x, unused, gm);
    out.k_down = gm;
  } else {
    out.k_down = g - 2.0 * mu * xi;
  }
  return out;
}

}  // namespace deltashell
