#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cli.hpp"

namespace deltashell::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

double number(const json& j, const std::string& field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<long>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::vector<std::pair<double, double>> parse_shells(const json& j) {
  std::vector<std::pair<double, double>> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string f = "shells[" + std::to_string(i) + "]";
      if (!j[i].is_array() || j[i].size() != 2) bad(f, "expected [radius, strength]");
      out.emplace_back(number(j[i][0], f + "[0]"), number(j[i][1], f + "[1]"));
    }
    return out;
  }
  if (!j.is_object()) bad("shells", "expected an object with radii and strengths");
  const json* r = find(j, "radii");
  const json* a = find(j, "strengths");
  if (!r || !a) bad("shells", "both radii and strengths are required");
  const auto radii = numbers(*r, "shells.radii");
  const auto strengths = numbers(*a, "shells.strengths");
  if (radii.size() != strengths.size()) bad("shells", "radii and strengths differ in length");
  for (std::size_t i = 0; i < radii.size(); ++i) out.emplace_back(radii[i], strengths[i]);
  return out;
}

ChannelSpec parse_channel(const json& j) {
  if (j.is_number()) return ChannelSpec::raw(j.get<double>());
  if (!j.is_object()) bad("channel", "expected {\"l\": x} or {\"n\": n, \"ell\": k}");
  const json* l = find(j, "l");
  const json* n = find(j, "n");
  const json* ell = find(j, "ell");
  if (l && (n || ell)) bad("channel", "give either l or (n, ell), not both");
  try {
    if (l) return ChannelSpec::raw(number(*l, "channel.l"));
    if (!n || !ell) bad("channel", "needs l or both n and ell");
    return ChannelSpec::angular(static_cast<int>(integer(*n, "channel.n")), static_cast<int>(integer(*ell, "channel.ell")));
  } catch (const DomainError& e) {
    bad("channel", e.what());
  }
}

// A sequence given as a list, or as coeff * k^power (optionally alternating in sign).
std::function<double(std::size_t)> parse_generator(const json& j, const std::string& field, std::size_t& length) {
  if (j.is_array()) {
    auto v = numbers(j, field);
    length = std::min(length, v.size());
    return [v = std::move(v)](std::size_t k) { return v.at(k - 1); };
  }
  if (!j.is_object()) bad(field, "expected a list or {\"coeff\", \"power\"}");
  const double c = find(j, "coeff") ? number(j["coeff"], field + ".coeff") : 1.0;
  const double p = find(j, "power") ? number(j["power"], field + ".power") : 0.0;
  const double b = find(j, "base") ? number(j["base"], field + ".base") : 1.0;
  const bool alt = find(j, "alternating") && j["alternating"].get<bool>();
  // coeff * k^power * base^k
  return [c, p, b, alt](std::size_t k) {
    const double kk = static_cast<double>(k);
    double v = c * std::pow(kk, p) * std::pow(b, kk);
    if (alt && k % 2 == 1) v = -v;
    return v;
  };
}

std::optional<bool> flag(const json& j, const char* key) {
  const json* f = find(j, key);
  if (!f) return std::nullopt;
  if (!f->is_boolean()) bad(std::string("family.flags.") + key, "expected true or false");
  return f->get<bool>();
}

TailModel parse_family(const json& j) {
  if (!j.is_object()) bad("family", "expected an object with a type");
  const json* t = find(j, "type");
  if (!t || !t->is_string()) bad("family.type", "expected finite, periodic, harmonic or sampled");
  const auto type = t->get<std::string>();
  if (type == "finite") return FiniteTail{};
  if (type == "periodic") {
    PeriodicTail p;
    if (!find(j, "spacings") || !find(j, "strengths")) bad("family", "periodic needs spacings and strengths");
    p.spacings = numbers(j["spacings"], "family.spacings");
    p.strengths = numbers(j["strengths"], "family.strengths");
    return p;
  }
  if (type == "harmonic") {
    HarmonicTail h;
    if (find(j, "A")) h.attraction = number(j["A"], "family.A");
    if (find(j, "c")) h.extra_coeff = number(j["c"], "family.c");
    if (find(j, "p")) h.extra_power = number(j["p"], "family.p");
    if (find(j, "decay")) h.remainder_decay = number(j["decay"], "family.decay");
    return h;
  }
  if (type == "sampled") {
    SampledTail s;
    std::size_t length = std::numeric_limits<std::size_t>::max();
    if (!find(j, "spacings") || !find(j, "strengths")) bad("family", "sampled needs spacings and strengths");
    s.spacing = parse_generator(j["spacings"], "family.spacings", length);
    s.strength = parse_generator(j["strengths"], "family.strengths", length);
    if (find(j, "horizon")) {
      const long h = integer(j["horizon"], "family.horizon");
      if (h < 1) bad("family.horizon", "must be at least 1");
      s.horizon = std::min(length, static_cast<std::size_t>(h));
    } else if (length != std::numeric_limits<std::size_t>::max()) {
      s.horizon = length;
    } else {
      s.horizon = 10000;
    }
    if (s.horizon < 1) bad("family", "sampled lists are empty");
    if (const json* f = find(j, "flags")) {
      if (!f->is_object()) bad("family.flags", "expected an object");
      s.flags.sum_d_squared_diverges = flag(*f, "sum_d_squared_diverges");
      s.flags.log_convex = flag(*f, "log_convex");
      s.flags.jump_series_converges = flag(*f, "jump_series_converges");
      s.flags.brinck_bounded = flag(*f, "brinck_bounded");
      s.flags.attractive = flag(*f, "attractive");
      s.flags.windowed_sum_diverges = flag(*f, "windowed_sum_diverges");
      s.flags.windowed_abs_vanishes = flag(*f, "windowed_abs_vanishes");
      s.flags.spacing_vanishes = flag(*f, "spacing_vanishes");
    }
    return s;
  }
  bad("family.type", "unknown family '" + type + "'");
}

SweepAxis parse_axis(const json& j, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  SweepAxis a{};
  const json* p = find(j, "param");
  if (!p || !p->is_string() || (p->get<std::string>() != "strength" && p->get<std::string>() != "radius"))
    bad(field + ".param", "expected \"strength\" or \"radius\"");
  a.param = p->get<std::string>();
  const long shell = find(j, "shell") ? integer(j["shell"], field + ".shell") : 1;
  if (shell < 1) bad(field + ".shell", "shells are numbered from 1");
  a.index = static_cast<std::size_t>(shell - 1);
  if (!find(j, "from") || !find(j, "to") || !find(j, "steps")) bad(field, "needs from, to and steps");
  a.from = number(j["from"], field + ".from");
  a.to = number(j["to"], field + ".to");
  const long steps = integer(j["steps"], field + ".steps");
  if (steps < 1) bad(field + ".steps", "must be at least 1");
  a.steps = static_cast<std::size_t>(steps);
  return a;
}

}  // namespace

double SweepAxis::at(std::size_t i) const {
  if (steps == 1) return from;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::string SweepAxis::label() const { return param + std::to_string(index + 1); }

ShellConfig Problem::config() const {
  if (!shells) return {};
  return normalize_config(*shells);
}

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("problem file must hold a JSON object");

  Problem p;
  p.source = j;
  try {
    if (const json* s = find(j, "shells")) p.shells = parse_shells(*s);
    if (const json* c = find(j, "channel")) p.channel = parse_channel(*c);
    if (const json* s = find(j, "space")) {
      const long n = s->is_object() ? integer((*s)["n"], "space.n") : integer(*s, "space");
      if (n < 2) bad("space", "dimension must be at least 2");
      p.space = static_cast<int>(n);
    }
    if (const json* f = find(j, "family")) p.family = parse_family(*f);
    if (const json* g = find(j, "gershgorin")) {
      if (const json* w = find(*g, "weights")) p.weights = numbers(*w, "gershgorin.weights");
      if (const json* o = find(*g, "omega_plus")) {
        if (!o->is_array()) bad("gershgorin.omega_plus", "expected an array of shell numbers");
        std::vector<std::size_t> idx;
        for (const auto& v : *o) {
          const long k = integer(v, "gershgorin.omega_plus");
          if (k < 1) bad("gershgorin.omega_plus", "shells are numbered from 1");
          idx.push_back(static_cast<std::size_t>(k - 1));
        }
        p.omega_plus = idx;
      }
    }
    if (const json* e = find(j, "epsilon")) p.epsilon = number(*e, "epsilon");
    if (const json* s = find(j, "sweep")) {
      if (s->is_object()) {
        p.sweep.push_back(parse_axis(*s, "sweep"));
      } else if (s->is_array() && (s->size() == 1 || s->size() == 2)) {
        for (std::size_t i = 0; i < s->size(); ++i) p.sweep.push_back(parse_axis((*s)[i], "sweep[" + std::to_string(i) + "]"));
      } else {
        bad("sweep", "expected one axis or a list of one or two axes");
      }
    }
    if (const json* o = find(j, "options")) {
      if (!o->is_object()) bad("options", "expected an object");
      if (find(*o, "tol")) p.options.tol = number((*o)["tol"], "options.tol");
      if (find(*o, "oracle")) p.options.oracle = (*o)["oracle"].get<bool>();
      if (find(*o, "lmax")) p.options.lmax = static_cast<int>(integer((*o)["lmax"], "options.lmax"));
      if (find(*o, "length")) p.options.length = number((*o)["length"], "options.length");
      if (find(*o, "mesh")) p.options.mesh = number((*o)["mesh"], "options.mesh");
    }
  } catch (const json::type_error& e) {
    throw ParseError(e.what());
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

void apply_flags(Problem& p, const Options& flags) {
  if (flags.tol) p.options.tol = flags.tol;
  if (flags.oracle) p.options.oracle = true;
  if (flags.lmax) p.options.lmax = flags.lmax;
  if (flags.length) p.options.length = flags.length;
  if (flags.mesh) p.options.mesh = flags.mesh;
}

}  // namespace deltashell::cli
