#pragma once

#include <cstddef>
#include <vector>

#include "deltashell/model.hpp"

namespace deltashell {

// Zero-energy solution u = a_k r^{l+1} + b_k r^{-l} on (r_{k-1}, r_k), with basis
// {sqrt(r), sqrt(r) log r} at l = -1/2. Index 0 is (0, r_1), index N is (r_N, inf).
struct PiecewiseSolution {
  double l = 0.0;
  std::vector<double> radii;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t interval_of(double r) const;
  double value(double r, std::size_t interval) const;
  double derivative(double r, std::size_t interval) const;
  double value(double r) const { return value(r, interval_of(r)); }
};

PiecewiseSolution zero_energy_solution(const ShellConfig& config, double l);

struct OscillationResult {
  std::size_t count = 0;
  bool flagged = false;  // a zero sat on a shell or at the threshold within 1e-12
  std::size_t count_more_attractive = 0;  // every alpha_k shifted by -1e-9
  std::size_t count_less_attractive = 0;  // every alpha_k shifted by +1e-9
};

OscillationResult oscillation_analysis(const ShellConfig& config, double l);

// Zeros of the regular zero-energy solution on (0, inf).
std::size_t oscillation_count(const ShellConfig& config, double l);

// Sign count of a lumped finite-difference discretization on (0, L] with u(L) = 0.
// Every shell is a grid node; each gap is split uniformly into cells no wider than h.
std::size_t fd_count(const ShellConfig& config, double l, double length, double mesh);

}  // namespace deltashell
