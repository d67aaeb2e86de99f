#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "deltashell/errors.hpp"

namespace deltashell {

struct Shell {
  double radius;
  double strength;

  bool operator==(const Shell&) const = default;
};

// Sorted, zero-free list of shells. Only normalize_config builds one.
class ShellConfig {
 public:
  ShellConfig() = default;

  std::span<const Shell> shells() const { return shells_; }
  std::size_t size() const { return shells_.size(); }
  bool empty() const { return shells_.empty(); }
  const Shell& operator[](std::size_t i) const { return shells_[i]; }

  std::vector<double> radii() const;
  std::vector<double> strengths() const;
  std::vector<std::pair<double, double>> pairs() const;

  bool all_attractive() const;  // alpha == alpha^-
  bool all_repulsive() const;

  bool operator==(const ShellConfig&) const = default;

 private:
  friend ShellConfig normalize_config(std::vector<std::pair<double, double>> raw);
  explicit ShellConfig(std::vector<Shell> shells) : shells_(std::move(shells)) {}
  std::vector<Shell> shells_;
};

ShellConfig normalize_config(std::vector<std::pair<double, double>> raw);
ShellConfig make_config(std::span<const double> radii, std::span<const double> strengths);

// Effective centrifugal coefficient of channel ell in dimension n.
double effective_l(int n, int ell);

class ChannelSpec {
 public:
  static ChannelSpec raw(double l);
  static ChannelSpec angular(int n, int ell);

  double l() const { return l_; }
  bool is_angular() const { return n_ > 0; }
  int dimension() const { return n_; }
  int angular_number() const { return ell_; }
  bool is_log_channel() const { return l_ == -0.5; }

 private:
  ChannelSpec(double l, int n, int ell) : l_(l), n_(n), ell_(ell) {}
  double l_;
  int n_;
  int ell_;
};

struct NegativePart {
  std::vector<std::size_t> indices;  // zero-based
  std::vector<double> magnitudes;
};

NegativePart negative_part(std::span<const double> strengths);

struct Atom {
  double position;
  double weight;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  // |alpha^-| placed at the attractive shells.
  static AtomicMeasure negative_part_of(const ShellConfig& config);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

 private:
  std::vector<Atom> atoms_;
};

struct InertiaReport {
  std::size_t kappa_minus = 0;
  std::size_t kappa_zero = 0;
  std::size_t kappa_plus = 0;
  double tolerance = 0.0;

  std::size_t dimension() const { return kappa_minus + kappa_zero + kappa_plus; }
};

enum class Status { Holds, Fails, Inconclusive };

std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::Inconclusive;
  std::string criterion;
  std::string evidence;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
};

Verdict holds(std::string criterion, std::string evidence);
Verdict fails(std::string criterion, std::string evidence);
Verdict inconclusive(std::string criterion, std::string evidence);

// Tail models describe how the shell sequence continues past the explicit config.

struct FiniteTail {};

// Cyclic continuation after the last explicit shell: spacing and strength blocks of equal length.
struct PeriodicTail {
  std::vector<double> spacings;
  std::vector<double> strengths;
};

// r_k = 1 + 1/2 + ... + 1/k and
// alpha_k = -A (2k+1) + c k^p + rho_k with |rho_k| = O(k^-decay).
struct HarmonicTail {
  double attraction = 0.0;
  double extra_coeff = 0.0;
  double extra_power = 0.0;
  double remainder_decay = std::numeric_limits<double>::infinity();
  std::function<double(std::size_t)> remainder;  // optional concrete rho_k

  double strength(std::size_t k) const;
};

// Limit facts a caller may assert about a black-box sequence.
struct SampledFlags {
  std::optional<bool> sum_d_squared_diverges;
  std::optional<bool> log_convex;             // d_{k-1} d_{k+1} >= d_k^2 eventually
  std::optional<bool> jump_series_converges;  // condition of the n_pm = 1 test
  std::optional<bool> brinck_bounded;         // sup of windowed |alpha^-| sums finite
  std::optional<bool> attractive;             // alpha == alpha^-
  std::optional<bool> windowed_sum_diverges;  // sums over (r, r+eps) tend to +inf for all eps
  std::optional<bool> windowed_abs_vanishes;  // sums of |alpha| over [r, r+1] tend to 0
  std::optional<bool> spacing_vanishes;       // d_k -> 0
};

// d_k and alpha_k for k = 1..horizon (one-based index).
struct SampledTail {
  std::function<double(std::size_t)> spacing;
  std::function<double(std::size_t)> strength;
  std::size_t horizon = 1;
  SampledFlags flags;
};

using TailModel = std::variant<FiniteTail, PeriodicTail, HarmonicTail, SampledTail>;

void validate_tail(const ShellConfig& head, const TailModel& tail);
std::string_view tail_name(const TailModel& tail);

}  // namespace deltashell
