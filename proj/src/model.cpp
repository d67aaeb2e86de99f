#include "deltashell/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace deltashell {

ShellConfig normalize_config(std::vector<std::pair<double, double>> raw) {
  std::vector<Shell> shells;
  shells.reserve(raw.size());
  for (auto [r, a] : raw) {
    if (!std::isfinite(r) || !std::isfinite(a))
      throw DomainError("shell radius and strength must be finite");
    if (r <= 0.0) {
      std::ostringstream os;
      os << "shell radius " << r << " is not positive";
      throw NonPositiveRadius(os.str());
    }
    shells.push_back({r, a});
  }
  std::sort(shells.begin(), shells.end(),
            [](const Shell& x, const Shell& y) { return x.radius < y.radius; });
  for (std::size_t i = 1; i < shells.size(); ++i) {
    if (shells[i].radius == shells[i - 1].radius) {
      std::ostringstream os;
      os << "two shells at radius " << shells[i].radius;
      throw DuplicateRadius(os.str());
    }
  }
  std::erase_if(shells, [](const Shell& s) { return s.strength == 0.0; });
  return ShellConfig(std::move(shells));
}

ShellConfig make_config(std::span<const double> radii, std::span<const double> strengths) {
  if (radii.size() != strengths.size())
    throw DomainError("radii and strengths differ in length");
  std::vector<std::pair<double, double>> raw;
  raw.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) raw.emplace_back(radii[i], strengths[i]);
  return normalize_config(std::move(raw));
}

std::vector<double> ShellConfig::radii() const {
  std::vector<double> out;
  out.reserve(shells_.size());
  for (const auto& s : shells_) out.push_back(s.radius);
  return out;
}

std::vector<double> ShellConfig::strengths() const {
  std::vector<double> out;
  out.reserve(shells_.size());
  for (const auto& s : shells_) out.push_back(s.strength);
  return out;
}

std::vector<std::pair<double, double>> ShellConfig::pairs() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(shells_.size());
  for (const auto& s : shells_) out.emplace_back(s.radius, s.strength);
  return out;
}

bool ShellConfig::all_attractive() const {
  return std::all_of(shells_.begin(), shells_.end(),
                     [](const Shell& s) { return s.strength < 0.0; });
}

bool ShellConfig::all_repulsive() const {
  return std::all_of(shells_.begin(), shells_.end(),
                     [](const Shell& s) { return s.strength > 0.0; });
}

// l(l+1) = (n-1)(n-3)/4 + ell(ell+n-2) has the root ell + (n-3)/2 because
// 1/4 + (n-1)(n-3)/4 + ell(ell+n-2) = (ell + (n-2)/2)^2. The closed form is exact in
// floating point, so n = 3 gives ell and n = 2, ell = 0 gives -1/2 with no rounding.
double effective_l(int n, int ell) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (ell < 0) throw DomainError("angular number must be nonnegative");
  return static_cast<double>(ell) + 0.5 * static_cast<double>(n - 3);
}

ChannelSpec ChannelSpec::raw(double l) {
  if (!(l >= -0.5) || !std::isfinite(l)) throw DomainError("channel l must be finite and >= -1/2");
  return ChannelSpec(l, 0, 0);
}

ChannelSpec ChannelSpec::angular(int n, int ell) { return ChannelSpec(effective_l(n, ell), n, ell); }

NegativePart negative_part(std::span<const double> strengths) {
  NegativePart out;
  for (std::size_t i = 0; i < strengths.size(); ++i) {
    if (strengths[i] < 0.0) {
      out.indices.push_back(i);
      out.magnitudes.push_back(-strengths[i]);
    }
  }
  return out;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!(a.position > 0.0) || !std::isfinite(a.position))
      throw NonPositiveRadius("atom position must be positive");
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
      throw DomainError("atom weight must be finite and nonnegative");
    if (i > 0 && !(atoms_[i - 1].position < a.position))
      throw DomainError("atom positions must be strictly increasing");
  }
}

AtomicMeasure AtomicMeasure::negative_part_of(const ShellConfig& config) {
  std::vector<Atom> atoms;
  for (const auto& s : config.shells())
    if (s.strength < 0.0) atoms.push_back({s.radius, -s.strength});
  return AtomicMeasure(std::move(atoms));
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "Holds";
    case Status::Fails:
      return "Fails";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Verdict holds(std::string criterion, std::string evidence) {
  return {Status::Holds, std::move(criterion), std::move(evidence)};
}
Verdict fails(std::string criterion, std::string evidence) {
  return {Status::Fails, std::move(criterion), std::move(evidence)};
}
Verdict inconclusive(std::string criterion, std::string evidence) {
  return {Status::Inconclusive, std::move(criterion), std::move(evidence)};
}

double HarmonicTail::strength(std::size_t k) const {
  const double kk = static_cast<double>(k);
  double a = -attraction * (2.0 * kk + 1.0);
  if (extra_coeff != 0.0) a += extra_coeff * std::pow(kk, extra_power);
  if (remainder) a += remainder(k);
  return a;
}

void validate_tail(const ShellConfig& head, const TailModel& tail) {
  if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
    if (p->spacings.empty() || p->spacings.size() != p->strengths.size())
      throw DomainError("periodic blocks must be nonempty and of equal length");
    for (double d : p->spacings)
      if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("periodic spacings must be positive");
  } else if (const auto* h = std::get_if<HarmonicTail>(&tail)) {
    if (!head.empty()) throw DomainError("a harmonic family carries no explicit shells");
    if (!(h->remainder_decay >= 0.0)) throw DomainError("remainder decay must be nonnegative");
  } else if (const auto* s = std::get_if<SampledTail>(&tail)) {
    if (!head.empty()) throw DomainError("a sampled family carries no explicit shells");
    if (s->horizon < 1) throw DomainError("sampled horizon must be at least 1");
    if (!s->spacing || !s->strength) throw DomainError("sampled family needs both generators");
  }
}

std::string_view tail_name(const TailModel& tail) {
  switch (tail.index()) {
    case 0:
      return "finite";
    case 1:
      return "periodic";
    case 2:
      return "harmonic";
    default:
      return "sampled";
  }
}

}  // namespace deltashell
