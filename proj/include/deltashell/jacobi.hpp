#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "deltashell/model.hpp"

namespace deltashell {

struct JacobiMatrix {
  std::vector<double> diagonal;      // b_k
  std::vector<double> off_diagonal;  // a_k, size() - 1 entries

  std::size_t size() const { return diagonal.size(); }
  Eigen::MatrixXd dense() const;
};

// First `count` shells of the family: radii r_k, spacings d_k = r_k - r_{k-1} (r_0 = 0),
// strengths alpha_k. Zero strengths are kept here; they are legitimate sequence entries.
struct ShellSequence {
  std::vector<double> radii;
  std::vector<double> spacings;
  std::vector<double> strengths;
};

// Number of shells the family provides; nullopt when unbounded.
std::optional<std::size_t> available_shells(const ShellConfig& head, const TailModel& tail);

ShellSequence shell_sequence(const ShellConfig& head, const TailModel& tail, std::size_t count);

// K x K truncation; row k needs d_{k+1}, so a family of N shells yields at most N-1 rows.
JacobiMatrix build_jacobi(const ShellConfig& head, const TailModel& tail, std::size_t rows);

Verdict check_self_adjoint(const ShellConfig& head, const TailModel& tail);
Verdict check_semibounded(const ShellConfig& head, const TailModel& tail);
// Throws PrerequisiteNotMet unless check_semibounded holds.
Verdict check_discrete(const ShellConfig& head, const TailModel& tail);
Verdict check_continuous_spectrum(const ShellConfig& head, const TailModel& tail);

}  // namespace deltashell
