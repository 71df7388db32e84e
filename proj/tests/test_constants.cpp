#include "doctest.h"

#include <cmath>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/primes.hpp"

using namespace zetalab;

TEST_CASE("euler gamma") {
  CHECK(euler_gamma() == doctest::Approx(0.5772156649015329).epsilon(1e-14));
}

TEST_CASE("real zeta values") {
  CHECK(riemann_zeta_real(2.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
  CHECK(riemann_zeta_real(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-13));
  CHECK(riemann_zeta_real(1.5) == doctest::Approx(2.6123753486854883).epsilon(1e-12));
  CHECK(riemann_zeta_real(60.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(riemann_zeta_real(1.0), std::domain_error);
}

TEST_CASE("prime zeta values") {
  CHECK(prime_zeta(2.0) == doctest::Approx(0.4522474200410655).epsilon(1e-12));
  CHECK(prime_zeta(3.0) == doctest::Approx(0.1747626392994435).epsilon(1e-12));
  // cross-check against a direct truncated sum plus integral tail bracket
  prime_table tab = sieve(1000000);
  double partial = prime_power_sum(tab, 0.0, 1e6, {{1.0, 2.0}});
  double tail = prime_zeta(2.0) - partial;
  CHECK(tail > 0.0);
  // pi(x) <= 1.3 x/log x for x >= 17, so the tail is below 1.3 integral dx/(x^2 log x)
  CHECK(tail < 1.3 / (1e6 * std::log(1e6)) * 2.0);
  CHECK(tail > 0.5 / (1e6 * std::log(1e6)));
}

TEST_CASE("bessel I0 against series, quadrature and reference values") {
  CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-14));
  CHECK(bessel_i0(2.0) == doctest::Approx(2.2795853023360673).epsilon(1e-14));
  CHECK(bessel_i0(14.9) == doctest::Approx(308375.57868743920).epsilon(1e-12));
  CHECK(bessel_i0(15.1) == doctest::Approx(374103.41119040899).epsilon(1e-10));
  CHECK(bessel_i0(20.0) == doctest::Approx(43558282.559553533).epsilon(1e-10));
  CHECK(bessel_i0_log(700.0) == doctest::Approx(695.80569999844345).epsilon(1e-12));
  CHECK(bessel_i0(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_i0(-2.0) == doctest::Approx(bessel_i0(2.0)).epsilon(1e-15));
  // quadrature oracle: I0(x) = (1/pi) int_0^pi exp(x cos u) du by Simpson
  for (double x : {0.7, 5.0, 18.0}) {
    const int panels = 4000;
    double h = M_PI / panels, acc = 0.0;
    for (int i = 0; i < panels; ++i) {
      double u0 = i * h;
      auto f = [&](double u) { return std::exp(x * std::cos(u)); };
      acc += h / 6.0 * (f(u0) + 4.0 * f(u0 + h / 2) + f(u0 + h));
    }
    CHECK(bessel_i0(x) == doctest::Approx(acc / M_PI).epsilon(1e-11));
  }
}

TEST_CASE("barnes G at integers and reference points") {
  // G(n) = prod_{i<=n-2} i!
  CHECK(barnes_g_log(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(barnes_g_log(2.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(barnes_g_log(3.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(barnes_g_log(4.0) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(barnes_g_log(5.0) == doctest::Approx(std::log(12.0)).epsilon(1e-13));
  CHECK(barnes_g_log(7.0) == doctest::Approx(std::log(34560.0)).epsilon(1e-13));
  CHECK(barnes_g_log(1.5) == doctest::Approx(0.0669318884350047).epsilon(1e-11));
  CHECK(barnes_g_log(2.5) == doctest::Approx(-0.0538503492002405).epsilon(1e-10));
  CHECK(barnes_g_log(6.3) == doctest::Approx(6.9212727032752246).epsilon(1e-12));
  // recurrence G(x+1) = Gamma(x) G(x) away from the integers
  for (double x : {0.37, 1.91, 3.14, 5.55}) {
    CHECK(barnes_g_log(x + 1.0) ==
          doctest::Approx(std::lgamma(x) + barnes_g_log(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(barnes_g_log(0.0), std::domain_error);
}

TEST_CASE("random matrix factors") {
  CHECK(f_constant(1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f_constant(2) == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  CHECK(f_constant(3) == doctest::Approx(1.0 / 8640.0).epsilon(1e-10));
}

TEST_CASE("arithmetic factor tail coefficients") {
  CHECK(a_tail_c2(1.0) == 0.0);
  CHECK(a_tail_c2(2.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(a_tail_c3(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(a_tail_c3(2.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(a_tail_c3(3.0) == doctest::Approx(16.0).epsilon(1e-12));
  // finite-difference extraction of c2, c3 from log f_p(x), Richardson step
  for (double k : {0.7, 1.0, 2.0, 2.5, 3.0, 4.0}) {
    auto logf = [&](double x) {
      double S = 1.0, d = 1.0;
      for (int m = 1; m < 200; ++m) {
        d *= (k + m - 1.0) / m;
        double term = d * d * std::pow(x, m);
        S += term;
        if (term < 1e-20 * S) break;
      }
      return k * k * std::log1p(-x) + std::log(S);
    };
    double x = 1e-3;
    auto P = [&](double u) { return logf(u) / (u * u); };
    double c2_num = 2.0 * P(x / 2) - P(x);
    CHECK(c2_num == doctest::Approx(a_tail_c2(k)).scale(1.0).epsilon(2e-4));
    auto R = [&](double u) { return (logf(u) - a_tail_c2(k) * u * u) / (u * u * u); };
    double c3_num = 2.0 * R(x / 2) - R(x);
    CHECK(c3_num == doctest::Approx(a_tail_c3(k)).scale(1.0).epsilon(2e-2));
    // quartic remainder envelope used by the tail bound
    for (double u : {0.05, 0.1, 0.2, 0.35, 0.5}) {
      double rem = std::abs(logf(u) - a_tail_c2(k) * u * u - a_tail_c3(k) * u * u * u);
      CHECK(rem <= std::pow(k + 1.0, 8) * std::pow(u, 4));
    }
  }
}

TEST_CASE("arithmetic factors a_k") {
  prime_table tab = sieve(1000000);
  a_result a0 = a_constant(tab, 0.0, 1e6);
  CHECK(a0.value == doctest::Approx(1.0).epsilon(1e-12));
  a_result a1 = a_constant(tab, 1.0, 1e6);
  CHECK(a1.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a1.tail_bound < 1e-9);
  a_result a2 = a_constant_auto(2.0, 1e-7);
  CHECK(a2.value == doctest::Approx(0.6079271018540266).epsilon(1e-6));
  CHECK(a2.tail_bound < 1e-7);
  CHECK(a2.p_limit >= 1e6);
  CHECK_THROWS_AS(a_constant(tab, 2.0, 1e9), config_error);
}

TEST_CASE("delta star") {
  double d1 = delta_star(1.0);
  CHECK(d1 > 1.63);
  CHECK(d1 < 1.65);
  double resid = d1 + 0.5 * std::log(d1) -
                 (std::log(2.0) + std::log(2.0) + 0.5);
  CHECK(std::abs(resid) < 1e-10);
  for (double alpha : {0.5, 2.0, 3.0}) {
    double d = delta_star(alpha);
    double rhs = std::log(alpha + 1.0) + alpha * std::log1p(1.0 / alpha) + 0.5;
    CHECK(std::abs(d + 0.5 * std::log(d) - rhs) < 1e-10);
  }
  CHECK(delta_star(2.0) > delta_star(1.0));
}

TEST_CASE("derived constant table") {
  auto rows = constant_set(3, 1e-6);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].a_k == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rows[0].C_k == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rows[1].C_k == doctest::Approx(0.6079271018540266 / 12.0).epsilon(1e-5));
  CHECK(rows[2].f_k == doctest::Approx(1.0 / 8640.0).epsilon(1e-10));
  for (const auto& r : rows) {
    CHECK(r.a_tail < 1e-6);
    CHECK(r.c_k > 0.0);
    CHECK(r.c_k < 1.0);
  }
}
