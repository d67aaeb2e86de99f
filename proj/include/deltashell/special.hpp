#pragma once

namespace deltashell {

// Modified Bessel functions of real order nu >= 0 at x > 0, returned in log form so that
// large orders and arguments stay representable.
struct BesselIK {
  double log_i;  // log I_nu(x)
  double log_k;  // log K_nu(x)
  double di;     // I_nu'(x) / I_nu(x)
  double dk;     // K_nu'(x) / K_nu(x)
  double i_up;   // I_{nu+1}(x) / I_nu(x)
  double k_down;  // K_{nu-1}(x) / K_nu(x)
};

BesselIK bessel_ik(double nu, double x);

// 1/Gamma(1+x) for |x| <= 1/2 from its Taylor series.
double inverse_gamma1p(double x);

// Fundamental solutions of -u'' + l(l+1)u/r^2 = lambda u for lambda <= 0.
// phi is regular at 0 with phi(0, r) = r^{l+1}; psi decays at infinity and
// phi psi' - phi' psi = -1.
double phi_l(double l, double lambda, double r);
double psi_l(double l, double lambda, double r);
double dphi_l(double l, double lambda, double r);
double dpsi_l(double l, double lambda, double r);

struct ChannelPair {
  double phi;
  double dphi;
  double psi;
  double dpsi;
};

ChannelPair channel_pair(double l, double lambda, double r);

// K_l(r, s; lambda) = phi(min(r, s)) psi(max(r, s)).
double green_kernel(double l, double lambda, double r, double s);

}  // namespace deltashell
