#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "thompson/errors.hpp"
#include "thompson/geometry.hpp"

using namespace thompson;

namespace {

constexpr double kPi = std::numbers::pi;

CantorParams steep() { return CantorParams::geometric(Rational(1, 1L << 30), Rational(1, 2)); }

}  // namespace

TEST_CASE("length upper bound") {
  auto half = CantorParams::explicit_sequence({Rational(1, 2)}, true);
  CHECK(length_upper_bound(half, 3) == doctest::Approx(2 * kPi * kPi / std::log(3.0)));
  CHECK(length_upper_bound(half, 3) == doctest::Approx(17.97).epsilon(1e-3));
  auto g = CantorParams::geometric(Rational(1), Rational(1, 2));
  for (std::uint64_t d = 1; d < 3000; ++d) REQUIRE(length_upper_bound(g, d + 1) < length_upper_bound(g, d));
  auto w1 = CantorParams::omega_k(1);
  CHECK(length_upper_bound(w1, 10000) < length_upper_bound(w1, 100));
  CHECK_THROWS_AS(length_upper_bound(w1, 0), IndexOutOfRange);
  CHECK_THROWS_AS(length_upper_bound(CantorParams::parse("explicit:1/2"), 2), IndexOutOfRange);
  CHECK(c_delta(half) == doctest::Approx(kPi * kPi / std::log(3.0)));
}

TEST_CASE("collar width") {
  CHECK(collar_width(2 * std::asinh(1.0)) == doctest::Approx(std::asinh(1.0)));
  CHECK(collar_width(2 * std::asinh(1.0)) == doctest::Approx(0.8814).epsilon(1e-4));
  CHECK(collar_width(0.01) > collar_width(1));
  double prev = 0;
  for (int k = 1; k <= 6; ++k) {
    double w = collar_width(std::pow(10.0, -k));
    CHECK(w > prev + 1.0);
    prev = w;
  }
  CHECK_THROWS_AS(collar_width(0), DegenerateParams);
}

TEST_CASE("wolpert interval") {
  auto [lo, hi] = wolpert_interval(1, 2);
  CHECK(lo == 0.5);
  CHECK(hi == 2);
  auto [a, b] = wolpert_interval(0.3, 1);
  CHECK(a == 0.3);
  CHECK(b == 0.3);
  for (double K = 1; K < 5; K += 0.25) {
    auto [l1, h1] = wolpert_interval(0.7, K);
    auto [l2, h2] = wolpert_interval(0.7, K + 0.25);
    CHECK(l2 <= l1);
    CHECK(h1 <= h2);
  }
  CHECK_THROWS_AS(wolpert_interval(1, 0.5), DegenerateParams);
}

TEST_CASE("annulus modulus") {
  CHECK(annulus_modulus(1, std::exp(2 * kPi)) == doctest::Approx(1.0));
  CHECK(annulus_modulus(1, 1 + 1e-9) < 1e-9);
  CHECK_THROWS_AS(annulus_modulus(1, 1), DegenerateParams);
  // U_0 at q = 1/2: radii |I|/2 and (5/2)|I|.
  CHECK(annulus_modulus(0.5, 2.5) == doctest::Approx(std::log(5.0) / (2 * kPi)));
  CHECK(modulus_U0(0.5) == doctest::Approx(0.2561).epsilon(1e-3));
  CHECK(modulus_U0(0.5) == doctest::Approx(annulus_modulus(0.5, 2.5)));
  TwistGeometry g{0.3, 1.0};
  CHECK(modulus_U1(0.3) == doctest::Approx(annulus_modulus(g.r1_inner(), g.r1_outer())));
}

TEST_CASE("d of K") {
  auto w = steep();
  auto r = d_of_K(w, 1.1, 40);
  CHECK(r.d == 1);
  CHECK(r.monotone);
  CHECK(r.K * r.L_d < r.delta_omega);
  std::uint64_t prev = 0;
  for (double K : {1.0, 1.1, 1.5, 2.0, 3.0}) {
    auto s = d_of_K(w, K, 40);
    CHECK(s.K * s.L_d < s.delta_omega);
    if (s.d > 1) {
      // Minimality: the previous depth fails the inequality.
      CHECK(K * length_upper_bound(w, s.d) >= s.delta_omega);
    }
    CHECK(s.d >= prev);
    prev = s.d;
  }
  auto half = CantorParams::explicit_sequence({Rational(1, 2)}, true);
  CHECK_THROWS_AS(d_of_K(half, 2.0, 40), NotFoundWithinHorizon);
  CHECK_THROWS_AS(d_of_K(w, 0.5, 40), DegenerateParams);
  // omega_1 decays far too slowly: delta(omega_1) is about 2.5e-4 while the
  // proxy is still near 10 at depth 40.
  CHECK_THROWS_AS(d_of_K(CantorParams::omega_k(1), 1.0, 40), NotFoundWithinHorizon);
}

TEST_CASE("count N(K)") {
  auto w = steep();
  auto c = count_NK(w, 1.1, 40);
  CHECK(c.count == 30);
  CHECK(c.count == support::brute_force_NK(w, 1.1, 40, c.depth.d));
  auto one = count_NK(w, 1.0, 40);
  Integer expected = 0;
  double m = length_upper_bound(w, one.depth.d);
  for (std::uint64_t d = 1; d <= 40; ++d) {
    if (length_upper_bound(w, d) == m) expected += Integer(1) << static_cast<mp_bitcnt_t>(d);
  }
  CHECK(one.count == expected);
  for (double K : {1.0, 1.05, 1.1, 1.2, 1.5, 2.0}) {
    auto r = count_NK(w, K, 40);
    REQUIRE(r.count == support::brute_force_NK(w, K, 40, r.depth.d));
    REQUIRE(r.tail_bound < r.band_lo);
  }
  // Monotone band at fixed d(K).
  auto a = count_NK(w, 1.05, 40), b = count_NK(w, 1.2, 40);
  REQUIRE(a.depth.d == b.depth.d);
  CHECK(b.count >= a.count);
  // A constant tail never leaves the band.
  auto flat = CantorParams::geometric(Rational(1, 1L << 60), Rational(1));
  CHECK(d_of_K(flat, 1.1, 40).d == 1);
  CHECK_THROWS_AS(count_NK(flat, 1.1, 40), HorizonTooSmall);
  CHECK_THROWS_AS(count_NK(CantorParams::omega_k(1), 1.1, 40), NotFoundWithinHorizon);
}

TEST_CASE("twist maps pointwise") {
  TwistMapSpec s{5, CantorParams::omega_k(1), TwistKind::Psi0};
  auto g = TwistGeometry::of(s);
  CHECK(g.q == doctest::Approx(CantorParams::omega_k(1).q_double(5)));
  Complex far(10 * g.r0_outer(), 3 * g.I);
  for (auto k : {TwistKind::Psi0, TwistKind::Psi1, TwistKind::Composed}) {
    CHECK(twist_map_eval(k, g, far) == far);
  }
  Complex c(g.I / 2, 0);
  CHECK(std::abs(twist_map_eval(s, c) - c) < 1e-15);
  // Continuity across the circles where the formula changes.
  auto across = [&](TwistKind k, Complex center, double r) {
    double worst = 0;
    for (int i = 0; i < 720; ++i) {
      Complex u = std::polar(1.0, 2 * kPi * (i + 0.25) / 720);
      Complex in = center + u * (r * (1 - 1e-13)), out = center + u * (r * (1 + 1e-13));
      worst = std::max(worst, std::abs(twist_map_eval(k, g, in) - twist_map_eval(k, g, out)) / g.I);
    }
    return worst;
  };
  CHECK(across(TwistKind::Psi0, g.c0(), g.I / 2) < 1e-9);
  CHECK(across(TwistKind::Psi0, g.c0(), g.r0_outer()) < 1e-9);
  CHECK(across(TwistKind::Psi1, g.c1(), g.r1_inner()) < 1e-9);
  CHECK(across(TwistKind::Psi1, g.c1(), g.r1_outer()) < 1e-9);
  CHECK(across(TwistKind::Psi1, g.c2(), g.r1_inner()) < 1e-9);
  CHECK(across(TwistKind::Psi1, g.c2(), g.r1_outer()) < 1e-9);
}

TEST_CASE("twist maps are injective on meshes") {
  TwistGeometry g{0.7, 1.0};
  for (auto k : {TwistKind::Psi0, TwistKind::Psi1, TwistKind::Composed}) {
    std::vector<std::pair<double, double>> images;
    double worst = 0;
    for (int a = 0; a < 160; ++a) {
      for (int b = 0; b < 160; ++b) {
        Complex z(-3.2 + 6.4 * (a + 0.37) / 160, -3.2 + 6.4 * (b + 0.61) / 160);
        Complex w = twist_map_eval(k, g, z);
        worst = std::max(worst, std::abs(twist_map_inverse(k, g, w) - z));
        images.emplace_back(w.real(), w.imag());
      }
    }
    CHECK(worst < 1e-12);
    std::sort(images.begin(), images.end());
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
  }
}

TEST_CASE("annuli avoid the Cantor set") {
  auto w = CantorParams::omega_k(1);
  for (std::uint64_t n : {3u, 5u, 8u}) {
    auto g = TwistGeometry::of({n, w, TwistKind::Psi0});
    for (const auto& I : intervals_at_depth(w, n + 6)) {
      for (const auto& x : {I.lo.get_d(), I.hi.get_d()}) {
        double r0 = std::abs(x - g.c0()), r1 = std::abs(x - g.c1()), r2 = std::abs(x - g.c2());
        REQUIRE_FALSE((g.I / 2 * (1 + 1e-12) < r0 && r0 < g.r0_outer() * (1 - 1e-12)));
        REQUIRE_FALSE((g.r1_inner() * (1 + 1e-12) < r1 && r1 < g.r1_outer() * (1 - 1e-12)));
        REQUIRE_FALSE((g.r1_inner() * (1 + 1e-12) < r2 && r2 < g.r1_outer() * (1 - 1e-12)));
      }
    }
  }
}

TEST_CASE("beltrami coefficient against the radial twist formula") {
  TwistGeometry g{0.6, 1.0};
  const double R = (1 + 3 * g.q) / (2 * (1 - g.q));
  const double slope0 = kPi / (g.I * (0.5 - R));
  const double slope1 = -2 * kPi / (g.q * g.I);
  const double h = (g.r0_outer() - g.I / 2) / (8 * 512);
  double worst = 0;
  for (int i = 1; i < 20; ++i) {
    for (int k = 0; k < 12; ++k) {
      Complex u = std::polar(1.0, 2 * kPi * (k + 0.5) / 12);
      double rho0 = g.I / 2 + (g.r0_outer() - g.I / 2) * i / 20.0;
      double m0 = std::abs(beltrami_fd(TwistKind::Psi0, g, g.c0() + rho0 * u, h));
      worst = std::max(worst, std::abs(m0 - support::radial_twist_mu(rho0, slope0)));
      double rho1 = g.r1_inner() + (g.r1_outer() - g.r1_inner()) * i / 20.0;
      double h1 = (g.r1_outer() - g.r1_inner()) / (8 * 512);
      double m1 = std::abs(beltrami_fd(TwistKind::Psi1, g, g.c1() + rho1 * u, h1));
      worst = std::max(worst, std::abs(m1 - support::radial_twist_mu(rho1, slope1)));
    }
  }
  CHECK(worst < 1e-3);
  CHECK(std::abs(beltrami_fd(TwistKind::Psi0, g, Complex(5, 5), 1e-4)) == 0.0);
}

TEST_CASE("dilatation estimates") {
  auto w = CantorParams::omega_k(1);
  TwistMapSpec s{10, w, TwistKind::Psi0};
  auto g = TwistGeometry::of(s);
  const double R = (1 + 3 * g.q) / (2 * (1 - g.q));
  // Analytic sup over U_0 for the displayed twist.
  double t = kPi * R / (2 * (R - 0.5));
  double K_exact = support::mu_to_K(t / std::sqrt(1 + t * t));
  auto e = twist_dilatation(s, 256);
  CHECK(e.K <= K_exact * (1 + 1e-6));
  CHECK(e.K == doctest::Approx(K_exact).epsilon(5e-3));
  for (auto k : {TwistKind::Psi0, TwistKind::Psi1, TwistKind::Composed}) {
    s.which = k;
    auto a = twist_dilatation(s, 64), b = twist_dilatation(s, 256);
    CHECK(std::abs(a.K - b.K) / b.K < 0.01);
    auto p = twist_dilatation(s, 96), q = twist_dilatation_serial(s, 96);
    CHECK(p.K == q.K);
    CHECK(p.samples == q.samples);
    CHECK(p.K >= 1);
  }
  CHECK_THROWS_AS(twist_dilatation(s, 32), DegenerateParams);
  auto row = twist_row(w, 10, 64);
  CHECK(row.mod_U0 == doctest::Approx(std::log((1 + 3 * row.q) / (1 - row.q)) / (2 * kPi)));
  CHECK(row.mod_U1 == row.mod_U2);
  CHECK(row.K <= row.K0 * row.K1 * (1 + 1e-6));
}
