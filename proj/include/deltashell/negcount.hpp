#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "deltashell/inertia.hpp"
#include "deltashell/model.hpp"

namespace deltashell {

struct WeylMatrix {
  Eigen::MatrixXd entries;
  double l;
  double lambda;
};

// entries(j, k) = K_l(r_j, r_k; lambda). Needs l > -1/2.
WeylMatrix weyl_matrix(const ShellConfig& config, double l, double lambda);

struct KappaMatrix {
  Eigen::MatrixXd entries;
  double l;
};

// (2l+1)(Lambda^-1 + M_l(0)): diagonal (2l+1)/alpha_k + r_k, off-diagonal r_j^{l+1} r_k^{-l}.
KappaMatrix kappa_matrix(const ShellConfig& config, double l);

// D K D with D = diag(r_k^{-1/2}). Same inertia as the kappa matrix, entries of order one:
// diagonal 1 + (2l+1)/(alpha_k r_k), off-diagonal (r_j/r_k)^{l+1/2}.
Eigen::MatrixXd scaled_kappa_matrix(const ShellConfig& config, double l);

struct CountResult {
  std::size_t count = 0;
  // Eigenvalues of the kappa matrix within tolerance of zero (or, at l = -1/2, a zero of the
  // zero-energy solution on a shell or at the threshold). count treats such modes as not
  // binding; alternative treats them as binding.
  bool degenerate = false;
  std::size_t alternative = 0;
  InertiaReport matrix_inertia;  // of the scaled kappa matrix; empty at l = -1/2
  std::size_t kappa_plus_alpha = 0;
  std::string method;  // "kappa-matrix" or "oscillation"
};

CountResult count_bound_states(const ShellConfig& config, const ChannelSpec& channel,
                               std::optional<double> tol = std::nullopt);

// (1/(2l+1)) sum w_k r_k, or sum w_k r_k |log r_k| at l = -1/2.
double bargmann_bound(const AtomicMeasure& measure, double l);

// sum w_k K_l(r_k, r_k; lambda)
double birman_schwinger_trace(const AtomicMeasure& measure, double l, double lambda);

struct NecessaryConditions {
  Verdict max_count_possible;   // can kappa_- equal N
  Verdict positivity_possible;  // can kappa_- equal 0 (decided only for alpha = alpha^-)
};

NecessaryConditions necessary_conditions(const ShellConfig& config, double l);

struct Certificate {
  Verdict verdict;
  std::optional<std::size_t> kappa_minus;
};

// Weighted Gershgorin separation; omega_plus holds zero-based shell indices.
Certificate gershgorin_classify(const ShellConfig& config, double l, std::span<const double> weights,
                                std::span<const std::size_t> omega_plus);

// Weights b_1 = 1, b_2 = eps(2-eps)/2, b_k = eps^2/(2(N-2)) used by the two-state test.
std::vector<double> two_state_weights(std::size_t n, double eps);

Certificate epsilon_two_state_check(const ShellConfig& config, double l, double eps);

struct MatrixBargmannReport {
  Eigen::MatrixXd matrix;  // (2l+1)|Lambda|^{1/2} M_l(0) |Lambda|^{1/2}
  double norm = 0.0;
  Verdict norm_check;  // Holds iff norm <= 2l+1, i.e. kappa_- = 0
  double bound = 0.0;  // trace / (2l+1)
  Verdict trace_check;  // sum |alpha_k| r_k <= 2l+1
  Verdict gershgorin_positivity;
  std::optional<std::size_t> first_failing;  // zero-based shell failing the row test
};

MatrixBargmannReport matrix_bargmann(const ShellConfig& config, double l);

struct KacKreinReport {
  Verdict sufficient;
  Verdict necessary;
  double sup_value = 0.0;
};

KacKreinReport kac_krein_check(const AtomicMeasure& measure);

}  // namespace deltashell
