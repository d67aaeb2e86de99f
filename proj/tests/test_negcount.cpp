#include <catch_amalgamated.hpp>
#include <random>

#include "deltashell/negcount.hpp"
#include "deltashell/oracle.hpp"
#include "deltashell/special.hpp"
#include "support.hpp"

#ifdef DELTASHELL_HAVE_BOOST
#include <boost/math/special_functions/bessel.hpp>
#endif

using namespace deltashell;
using Catch::Approx;

namespace {

ShellConfig cfg(std::vector<double> r, std::vector<double> a) { return make_config(r, a); }

std::size_t count(const ShellConfig& c, double l) { return count_bound_states(c, ChannelSpec::raw(l)).count; }

// Independent two-shell classification. Both attractive: zero bound states iff both
// diagonal entries of M_2 are negative and det M_2 > 0, two iff both are >= 0 and
// det M_2 > 0, one otherwise. One attractive: one bound state iff det M_2 > 0.
std::size_t two_shell_reference(double a1, double a2, double r1, double r2, double l) {
  const double w = 2 * l + 1;
  if (a1 > 0 && a2 > 0) return 0;
  const double d11 = w / a1 + r1, d22 = w / a2 + r2, off = std::pow(r1, l + 1) * std::pow(r2, -l);
  const double det = d11 * d22 - off * off;
  if (a1 < 0 && a2 < 0) {
    if (std::abs(a1) * r1 < w && std::abs(a2) * r2 < w && det > 0) return 0;
    if (std::abs(a1) * r1 >= w && std::abs(a2) * r2 >= w && det > 0) return 2;
    return 1;
  }
  return det > 0 ? 1 : 0;
}

}  // namespace

TEST_CASE("Weyl matrix at zero energy") {
  const auto m = weyl_matrix(cfg({1, 2}, {-1, -1}), 0.0, 0.0).entries;
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(1, 1) == 2.0);
  const auto m2 = weyl_matrix(cfg({1, 1.5}, {-2, 2}), 0.0, 0.0).entries;
  CHECK(m2(0, 0) == 1.0);
  CHECK(m2(0, 1) == 1.0);
  CHECK(m2(1, 1) == 1.5);
  CHECK_THROWS_AS(weyl_matrix(cfg({1}, {-1}), -0.5, 0.0), DomainError);
  CHECK_THROWS_AS(weyl_matrix(ShellConfig{}, 0.0, 0.0), DomainError);
}

TEST_CASE("Weyl matrix far below the threshold") {
  // M_l(-inf) = 0: the diagonal decays like 1/(2 kappa), off-diagonals exponentially.
  const auto c = cfg({1, 2, 3.5}, {-1, 2, -3});
  for (double l : {0.0, 1.0, 2.5}) {
    const auto m = weyl_matrix(c, l, -1e6).entries;
    for (int i = 0; i < 3; ++i) {
      CHECK(m(i, i) == Approx(1.0 / (2.0 * 1e3)).epsilon(2e-3 * (l + 1) * (l + 1)));
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(m(i, j)) < 1e-8);
    }
    double prev = INFINITY;
    for (double lam : {-1e2, -1e4, -1e6, -1e8, -1e10}) {
      const double v = weyl_matrix(c, l, lam).entries.cwiseAbs().maxCoeff();
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-5);
  }
}

TEST_CASE("Weyl matrix matches the closed form as lambda -> 0-") {
  const auto c = cfg({0.5, 1.0, 2.0, 4.0}, {-1, -1, 1, -2});
  for (double l : {0.5, 1.0, 2.0}) {
    const auto a = weyl_matrix(c, l, 0.0).entries;
    const auto b = weyl_matrix(c, l, -1e-14).entries;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double r = std::min(c[i].radius, c[j].radius), s = std::max(c[i].radius, c[j].radius);
        CHECK(a(i, j) == Approx(std::pow(r, l + 1) * std::pow(s, -l) / (2 * l + 1)).epsilon(1e-15));
        CHECK(b(i, j) == Approx(a(i, j)).epsilon(1e-6));
      }
  }
}

#ifdef DELTASHELL_HAVE_BOOST
TEST_CASE("Weyl matrix against Boost Bessel products") {
  const auto c = cfg({0.3, 1.1, 2.0, 5.0}, {-1, 1, -1, 1});
  for (double l : {0.0, 0.7, 2.0, 6.5})
    for (double lam : {-0.01, -1.0, -30.0}) {
      const double k = std::sqrt(-lam), nu = l + 0.5;
      const auto m = weyl_matrix(c, l, lam).entries;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double r = std::min(c[i].radius, c[j].radius), s = std::max(c[i].radius, c[j].radius);
          const double ref = std::sqrt(r * s) * boost::math::cyl_bessel_i(nu, k * r) * boost::math::cyl_bessel_k(nu, k * s);
          CHECK(m(i, j) == Approx(ref).epsilon(1e-11));
        }
    }
}
#endif

TEST_CASE("Weyl matrix increases with lambda") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 60; ++t) {
    const auto s = testing::random_shells(gen, 1 + t % 6, 10.0, -5, 5);
    const auto c = testing::to_config(s);
    const double l = std::vector<double>{0.0, 0.5, 1.0, 2.0}[t % 4];
    const double l1 = -std::pow(10.0, (t % 5) - 2), l2 = l1 / 3.0;
    const Eigen::MatrixXd diff = weyl_matrix(c, l, l2).entries - weyl_matrix(c, l, l1).entries;
    const auto in = inertia(diff, 1e-12 * diff.cwiseAbs().maxCoeff());
    CHECK(in.kappa_minus == 0);
  }
}

TEST_CASE("kappa matrix examples") {
  const auto k1 = kappa_matrix(cfg({1, 1.5}, {-2, 2}), 0.0).entries;
  CHECK(k1(0, 0) == 0.5);
  CHECK(k1(0, 1) == 1.0);
  CHECK(k1(1, 0) == 1.0);
  CHECK(k1(1, 1) == 2.0);
  CHECK(std::abs(k1.determinant()) < 1e-12);
  const auto k2 = kappa_matrix(cfg({1, 2}, {-2, -2}), 0.0).entries;
  CHECK(k2(0, 0) == 0.5);
  CHECK(k2(0, 1) == 1.0);
  CHECK(k2(1, 1) == 1.5);
  for (double l : {0.0, 1.0, 3.5}) {
    const auto k3 = kappa_matrix(cfg({1.7}, {-0.4}), l).entries;
    REQUIRE(k3.rows() == 1);
    CHECK(k3(0, 0) == Approx((2 * l + 1) / -0.4 + 1.7).epsilon(1e-15));
  }
}

TEST_CASE("kappa matrix entries follow the general formula") {
  const auto c = cfg({0.5, 1.0, 3.0}, {-1, 2, -4});
  const double l = 1.5;
  const auto k = kappa_matrix(c, l).entries;
  for (int j = 0; j < 3; ++j) {
    CHECK(k(j, j) == Approx((2 * l + 1) / c[j].strength + c[j].radius).epsilon(1e-15));
    for (int i = j + 1; i < 3; ++i) CHECK(k(j, i) == Approx(std::pow(c[j].radius, l + 1) * std::pow(c[i].radius, -l)).epsilon(1e-14));
  }
}

TEST_CASE("count examples") {
  CHECK(count(cfg({1}, {-3}), 0.0) == 1);
  CHECK(count(cfg({1}, {-1}), 0.0) == 0);
  // u = r, then u = 2 - r on (1, 2): one zero, sitting on the second shell.
  CHECK(count(cfg({1, 2}, {-2, -2}), 0.0) == 1);
  CHECK(testing::reference_zero_count({1, 2}, {-2, -2}, 0.0) == 1);
  // u = 1 - 9(r - 1), then u = -8 + 71(r - 2): zeros near 1.11 and 2.11.
  CHECK(count(cfg({1, 2}, {-10, -10}), 0.0) == 2);
  CHECK(testing::reference_zero_count({1, 2}, {-10, -10}, 0.0) == 2);
  CHECK(count(ShellConfig{}, 2.0) == 0);
}

TEST_CASE("degenerate instance reports both counts") {
  const auto r = count_bound_states(cfg({1, 1.5}, {-2, 2}), ChannelSpec::raw(0.0));
  CHECK(r.count == 0);
  CHECK(r.degenerate);
  CHECK(r.alternative == 1);
  CHECK(r.matrix_inertia.kappa_zero == 1);
  CHECK(r.kappa_plus_alpha == 1);
}

TEST_CASE("log channel routes to the oscillation count") {
  const auto r = count_bound_states(cfg({1}, {-1}), ChannelSpec::angular(2, 0));
  CHECK(r.method == "oscillation");
  CHECK(r.count == 1);  // any attraction binds in the l = -1/2 channel
  CHECK(testing::reference_zero_count({1}, {-1}, -0.5) == 1);
  CHECK(count_bound_states(cfg({1}, {1}), ChannelSpec::angular(2, 0)).count == 0);
}

TEST_CASE("two-shell classification") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> ua(-10, 10), ur(0.05, 5), ul(0, 4);
  for (int t = 0; t < 500; ++t) {
    double a1 = ua(gen), a2 = ua(gen);
    if (t % 2) {
      a1 = -std::abs(a1);
      a2 = -std::abs(a2);
    }
    double r1 = ur(gen), r2 = ur(gen);
    if (r1 > r2) std::swap(r1, r2);
    const double l = ul(gen);
    CHECK(count(cfg({r1, r2}, {a1, a2}), l) == two_shell_reference(a1, a2, r1, r2, l));
  }
}

TEST_CASE("Bargmann examples") {
  CHECK(bargmann_bound(AtomicMeasure({{1.0 / 3.0, 2.0}, {1.0, 1.0 / 3.0}}), 0.0) == Approx(1.0).epsilon(1e-15));
  CHECK(bargmann_bound(AtomicMeasure({{1.0, 5.0}}), -0.5) == 0.0);
  CHECK(bargmann_bound(AtomicMeasure{}, 1.0) == 0.0);
  CHECK(bargmann_bound(AtomicMeasure({{2.0, 3.0}}), 1.0) == 2.0);
}

TEST_CASE("Birman-Schwinger trace") {
  const AtomicMeasure m({{0.5, 1.0}, {2.0, 3.0}});
  CHECK(birman_schwinger_trace(m, 1.0, 0.0) == bargmann_bound(m, 1.0));
  CHECK(birman_schwinger_trace(AtomicMeasure({{1.0, 1.0}}), 0.0, -1.0) == Approx(std::sinh(1.0) * std::exp(-1.0)).epsilon(1e-13));
  CHECK(birman_schwinger_trace(AtomicMeasure{}, 0.0, -1.0) == 0.0);
  double prev = birman_schwinger_trace(m, 0.5, 0.0);
  for (double lam : {-1e-6, -1e-3, -0.1, -1.0, -10.0, -1e3}) {
    const double v = birman_schwinger_trace(m, 0.5, lam);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("necessary conditions") {
  {
    const auto nc = necessary_conditions(cfg({1, 2}, {-2, 2}), 0.0);
    CHECK(nc.max_count_possible.fails());
  }
  {
    const auto nc = necessary_conditions(cfg({1}, {-3}), 0.0);
    CHECK(nc.positivity_possible.fails());
    CHECK(nc.max_count_possible.holds());
  }
  {
    const auto nc = necessary_conditions(cfg({1}, {-1}), 0.0);
    CHECK(nc.max_count_possible.fails());
    CHECK(nc.positivity_possible.holds());
  }
  CHECK(necessary_conditions(cfg({1}, {-1}), 0.0).max_count_possible.criterion == "necessary-max-count");
}

TEST_CASE("Gershgorin classification examples") {
  const std::vector<double> one{1.0};
  const std::vector<std::size_t> plus{0}, none{};
  {
    const auto g = gershgorin_classify(cfg({1}, {-3}), 0.0, one, plus);
    CHECK(g.verdict.holds());
    CHECK(g.kappa_minus == 1u);
  }
  {
    const auto g = gershgorin_classify(cfg({1}, {-0.5}), 0.0, one, none);
    CHECK(g.verdict.holds());
    CHECK(g.kappa_minus == 0u);
  }
  {
    const std::vector<double> b{1.0, 1.0};
    const auto g = gershgorin_classify(cfg({1, 2}, {-3, -0.2}), 0.0, b, plus);
    CHECK(g.verdict.fails());
    CHECK_FALSE(g.kappa_minus.has_value());
  }
  CHECK_THROWS_AS(gershgorin_classify(cfg({1, 2}, {-3, 1}), 0.0, std::vector<double>{1, 1}, plus), MixedSigns);
}

TEST_CASE("two-state certificate") {
  CHECK(epsilon_two_state_check(cfg({1, 1.5, 20}, {-5, -5, -0.001}), 0.0, 0.5).verdict.fails());
  CHECK(epsilon_two_state_check(cfg({1, 100}, {-5, -5}), 0.0, 0.5).verdict.fails());
  CHECK_THROWS_AS(epsilon_two_state_check(cfg({1, 2, 3}, {-1, 1, -1}), 0.0, 0.5), MixedSigns);

  const auto c0 = cfg({1, 100, 1e6}, {-3, -0.03, -5e-7});
  const auto t0 = epsilon_two_state_check(c0, 0.0, 0.5);
  CHECK(t0.verdict.holds());
  CHECK(t0.kappa_minus == 2u);
  CHECK(count(c0, 0.0) == 2);
  CHECK(testing::reference_zero_count(c0.radii(), c0.strengths(), 0.0) == 2);

  const auto c1 = cfg({1, 100, 1e6, 1e8}, {-7, -0.07, -1e-6, -1e-8});
  const auto t1 = epsilon_two_state_check(c1, 1.0, 0.5);
  CHECK(t1.verdict.holds());
  CHECK(count(c1, 1.0) == 2);
  CHECK(testing::reference_zero_count(c1.radii(), c1.strengths(), 1.0) == 2);

  const auto b = two_state_weights(5, 0.5);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == Approx(0.375));
  CHECK(b[4] == Approx(0.25 / 6.0));
}

TEST_CASE("matrix Bargmann examples") {
  const auto c = cfg({1.0 / 3.0, 1.0}, {-2.0, -1.0 / 3.0});
  const auto mb = matrix_bargmann(c, 0.0);
  CHECK(mb.norm_check.holds());
  CHECK(mb.bound == Approx(1.0).epsilon(1e-15));
  CHECK(mb.gershgorin_positivity.fails());
  CHECK(mb.first_failing == 0u);
  CHECK(count(c, 0.0) == 0);
  CHECK(mb.matrix.trace() == Approx(1.0).epsilon(1e-15));

  for (double l : {0.0, 1.0, 2.5}) {
    const auto edge = matrix_bargmann(cfg({2.0}, {-(2 * l + 1) / 2.0}), l);
    CHECK(edge.norm_check.holds());
    CHECK(count(cfg({2.0}, {-(2 * l + 1) / 2.0}), l) == 0);
  }
  CHECK_THROWS_AS(matrix_bargmann(cfg({1, 2}, {-1, 1}), 0.0), MixedSigns);
}

TEST_CASE("Kac-Krein examples") {
  {
    const auto kk = kac_krein_check(AtomicMeasure({{2.0, 0.1}}));
    CHECK(kk.sup_value == Approx(0.2));
  }
  {
    const auto kk = kac_krein_check(AtomicMeasure({{1.0, 0.1}, {2.0, 0.05}}));
    CHECK(kk.sup_value == Approx(0.15));
    CHECK(kk.sufficient.holds());
    CHECK(count(cfg({1, 2}, {-0.1, -0.05}), 0.0) == 0);
    CHECK(testing::reference_zero_count({1, 2}, {-0.1, -0.05}, 0.0) == 0);
  }
  {
    const auto kk = kac_krein_check(AtomicMeasure{});
    CHECK(kk.sup_value == 0.0);
    CHECK(kk.sufficient.holds());
  }
  CHECK(kac_krein_check(AtomicMeasure({{1.0, 2.0}})).necessary.fails());
  CHECK(kac_krein_check(AtomicMeasure({{1.0, 0.5}})).sufficient.status == Status::Inconclusive);
}

TEST_CASE("matrix count equals the zero count") {
  std::mt19937_64 gen(1234);
  int mismatches = 0, checked = 0;
  for (double l : {0.0, 0.5, 1.0, 2.0, 3.5}) {
    for (int t = 0; t < 400; ++t) {
      const auto s = testing::random_shells(gen, 1 + t % 8, 10.0, -10, 10);
      const auto c = testing::to_config(s);
      const auto res = count_bound_states(c, ChannelSpec::raw(l));
      const auto ref = testing::reference_zero_count(s.radii, s.strengths, l);
      mismatches += res.count != ref;
      mismatches += res.count != oscillation_count(c, l);
      ++checked;
    }
  }
  CHECK(checked == 2000);
  CHECK(mismatches == 0);
}

TEST_CASE("dominance properties") {
  std::mt19937_64 gen(77);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const double l = std::vector<double>{0.0, 0.5, 1.0, 2.0, 3.5}[t % 5];
    const auto s = testing::random_shells(gen, 1 + t % 8, 10.0, -10, 10);
    const auto c = testing::to_config(s);
    const auto res = count_bound_states(c, ChannelSpec::raw(l));
    const std::size_t neg = c.size() - res.kappa_plus_alpha;
    if (res.count > neg) ++bad;  // kappa_-(h) <= kappa_-(alpha)
    const auto m = AtomicMeasure::negative_part_of(c);
    if (!m.empty() && !(static_cast<double>(res.count) < bargmann_bound(m, l))) ++bad;
    // kappa_-(h) <= kappa_+(M of the attractive subconfiguration)
    std::vector<std::pair<double, double>> sub;
    for (const auto& sh : c.shells())
      if (sh.strength < 0) sub.emplace_back(sh.radius, sh.strength);
    if (!sub.empty()) {
      const auto ks = inertia(scaled_kappa_matrix(normalize_config(sub), l));
      if (res.count > ks.kappa_plus) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("scaling covariance") {
  std::mt19937_64 gen(99);
  int bad = 0;
  for (int t = 0; t < 300; ++t) {
    const double l = std::vector<double>{0.0, 0.5, 1.0, 2.0}[t % 4];
    const auto s = testing::random_shells(gen, 1 + t % 6, 10.0, -10, 10);
    const double scale = std::pow(10.0, (t % 7) - 3);
    std::vector<double> r2, a2;
    for (std::size_t i = 0; i < s.radii.size(); ++i) {
      r2.push_back(s.radii[i] * scale);
      a2.push_back(s.strengths[i] / scale);
    }
    bad += count(make_config(s.radii, s.strengths), l) != count(make_config(r2, a2), l);
  }
  CHECK(bad == 0);
}

TEST_CASE("certificates agree with the exact count") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u01(0, 1);
  int gersh = 0, norm = 0, kk = 0, bad = 0;
  for (int t = 0; t < 3000; ++t) {
    const double l = std::vector<double>{0.0, 0.5, 1.0, 2.0}[t % 4];
    const std::size_t n = 1 + t % 5;
    // Spread radii geometrically so that separation certificates sometimes apply.
    std::vector<double> r, a;
    double rad = 0.1 + u01(gen);
    for (std::size_t i = 0; i < n; ++i) {
      r.push_back(rad);
      rad *= 1.5 + 50 * u01(gen);
    }
    for (std::size_t i = 0; i < n; ++i) a.push_back(-(2 * l + 1) / r[i] * std::pow(10.0, 2 * u01(gen) - 1));
    const auto c = make_config(r, a);
    const std::size_t exact = count(c, l);

    std::vector<std::size_t> plus;
    for (std::size_t i = 0; i < n; ++i)
      if (-a[i] * r[i] > 2 * l + 1) plus.push_back(i);
    const auto g = gershgorin_classify(c, l, std::vector<double>(n, 1.0), plus);
    if (g.kappa_minus) {
      ++gersh;
      bad += *g.kappa_minus != exact;
    }
    const auto mb = matrix_bargmann(c, l);
    if (mb.norm_check.holds()) {
      ++norm;
      bad += exact != 0;
    } else {
      bad += exact == 0;
    }
    if (mb.gershgorin_positivity.holds()) bad += exact != 0;
    if (mb.trace_check.holds()) bad += exact != 0;
    if (l == 0.0) {
      const auto k = kac_krein_check(AtomicMeasure::negative_part_of(c));
      if (k.sufficient.holds()) {
        ++kk;
        bad += exact != 0;
      }
      if (k.necessary.fails()) bad += exact == 0;
    }
    if (n >= 3) {
      const auto ts = epsilon_two_state_check(c, l, 0.5);
      if (ts.kappa_minus) bad += exact != 2;
    }
  }
  CHECK(bad == 0);
  CHECK(gersh > 100);
  CHECK(norm > 100);
  CHECK(kk > 20);
}
