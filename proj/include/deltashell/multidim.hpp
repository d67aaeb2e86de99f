#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "deltashell/model.hpp"

namespace deltashell {

// Dimension of degree-ell spherical harmonics on S^{n-1}.
std::size_t channel_multiplicity(int n, int ell);

struct ChannelEntry {
  int ell;
  double l_eff;
  std::size_t multiplicity;
  std::size_t kappa;
  bool degenerate;
  std::size_t alternative;
};

struct ChannelLedger {
  std::vector<ChannelEntry> entries;
  int truncation_l = 0;  // first channel certified empty; every later one is empty too
  std::string truncation_reason;
  bool certified = true;  // false when stopped by the channel limit before the cutoff
};

struct TotalResult {
  std::size_t total = 0;
  ChannelLedger ledger;
  bool degenerate = false;
};

TotalResult total_bound_states(const ShellConfig& config, int n, std::optional<int> max_ell = std::nullopt,
                               std::optional<double> tol = std::nullopt);

struct AggregateBounds {
  double channel_sum;  // sum over channels of multiplicity * floor(I / (2 l_eff + 1))
  std::string channel_sum_id;
  double closed_form;
  std::string closed_form_id;
  double i0;         // sum |alpha_k^-| r_k
  double i_log;      // sum |alpha_k^- r_k log r_k|, n = 2 only
  bool certified;    // n = 3 only; see README for n = 2
};

AggregateBounds aggregate_bounds(const ShellConfig& config, int n);

struct MultidimReport {
  Verdict self_adjoint;
  Verdict semibounded;
  Verdict essential_spectrum;  // sigma_ess(H) = [0, inf)
  Verdict discrete;
  bool deficiency_infinite = false;
};

MultidimReport multidim_verdicts(const ShellConfig& head, const TailModel& tail, int n);

}  // namespace deltashell
