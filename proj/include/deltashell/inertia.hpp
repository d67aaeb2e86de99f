#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "deltashell/model.hpp"

namespace deltashell {

struct Tridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd sub;  // size n-1

  std::size_t size() const { return static_cast<std::size_t>(diag.size()); }
};

// Householder reduction of a symmetric matrix; eigenvalues are preserved.
Tridiagonal tridiagonalize(const Eigen::MatrixXd& m);

// Number of eigenvalues strictly below sigma, from the LDL^T pivot signs of T - sigma I.
std::size_t count_below(const Tridiagonal& t, double sigma);

// Number of eigenvalues strictly above sigma.
std::size_t count_above(const Tridiagonal& t, double sigma);

// k-th smallest eigenvalue (zero-based) by bisection on Sturm counts.
double kth_eigenvalue(const Tridiagonal& t, std::size_t k);

// n * 32 eps * ||m||_inf
double default_tolerance(const Eigen::MatrixXd& m);

InertiaReport inertia(const Eigen::MatrixXd& m);
InertiaReport inertia(const Eigen::MatrixXd& m, double tol);

// Largest |eigenvalue| of a symmetric matrix.
double symmetric_norm(const Eigen::MatrixXd& m);

}  // namespace deltashell
