#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "zetalab/accum.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/params.hpp"
#include "zetalab/primes.hpp"

using namespace zetalab;

namespace {

// Independent oracle: trial division, no wheel, no segments.
bool is_prime_naive(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sieve matches trial division up to 10000") {
  prime_table tab = sieve(10000);
  std::vector<uint32_t> naive;
  for (uint64_t n = 2; n <= 10000; ++n)
    if (is_prime_naive(n)) naive.push_back(static_cast<uint32_t>(n));
  REQUIRE(tab.primes.size() == naive.size());
  CHECK(tab.primes == naive);
  CHECK(tab.logs.size() == tab.primes.size());
  CHECK(tab.logs[3] == doctest::Approx(std::log(7.0)).epsilon(1e-15));
}

TEST_CASE("prime counts at powers of ten") {
  prime_table tab = sieve(10000000);
  CHECK(tab.count(10.0) == 4);
  CHECK(tab.count(100.0) == 25);
  CHECK(tab.count(10000.0) == 1229);
  CHECK(tab.count(100000.0) == 9592);
  CHECK(tab.count(1000000.0) == 78498);
  CHECK(tab.count(10000000.0) == 664579);
  // boundary handling: range is (lo, hi]
  auto [a, b] = tab.range(7.0, 11.0);
  CHECK(tab.primes[a] == 11);
  CHECK(b - a == 1);
  auto [c, d] = tab.range(6.9, 11.0);
  CHECK(tab.primes[c] == 7);
  CHECK(d - c == 2);
}

TEST_CASE("segment boundaries hide no primes") {
  // limits straddling the 30*2^18 segment span
  for (uint64_t limit : {7864310ull, 7864330ull}) {
    prime_table tab = sieve(limit);
    size_t slow = 0;
    for (uint64_t n = 7864300; n <= limit; ++n)
      if (is_prime_naive(n)) ++slow;
    auto [a, b] = tab.range(7864300.0, static_cast<double>(limit));
    CHECK(b - a == slow);
  }
  CHECK(sieve(1).primes.empty());
  CHECK(sieve(2).primes.size() == 1);
  CHECK(sieve(30).primes.size() == 10);
}

TEST_CASE("prime power sums against a brute force oracle") {
  prime_table tab = sieve(100000);
  // sum over p <= 100 of 1/p (frozen from a direct rational-free evaluation)
  double s1 = prime_power_sum(tab, 0.0, 100.0, {{1.0, 1.0}});
  CHECK(s1 == doctest::Approx(1.8028171).epsilon(1e-6));
  kahan_sum brute;
  for (uint32_t p : tab.primes)
    if (p <= 100) brute.add(1.0 / static_cast<double>(p));
  CHECK(s1 == doctest::Approx(brute.value()).epsilon(1e-15));
  // two-term combination with distinct exponents
  double s2 = prime_power_sum(tab, 10.0, 1000.0, {{0.5, 1.2}, {0.125, 2.4}});
  kahan_sum brute2;
  for (uint32_t p : tab.primes)
    if (p > 10 && p <= 1000)
      brute2.add(0.5 * std::pow(p, -1.2) + 0.125 * std::pow(p, -2.4));
  CHECK(s2 == doctest::Approx(brute2.value()).epsilon(1e-13));
}

TEST_CASE("mertens product approaches exp(-gamma)") {
  prime_table tab = sieve(1000000);
  double v = mertens_product(tab, 1000000.0);
  CHECK(v == doctest::Approx(0.5615).epsilon(2e-3));
  // slow drift toward the limit 0.561459...
  double v_small = mertens_product(tab, 1000.0);
  CHECK(std::abs(v - 0.5614594836) < std::abs(v_small - 0.5614594836));
}

TEST_CASE("variance report for an explicit desk ladder") {
  ladder_config cfg;
  cfg.mode = ladder_mode::explicit_levels;
  cfg.t = 4.0;
  cfg.explicit_t0 = std::log(std::log(1000.0));
  cfg.explicit_levels = {std::log(std::log(100000.0))};
  cfg.alpha = 1.0;
  cfg.delta = 1.0;
  cfg.s_exponent = 1.0;
  ladder lad = build_ladder(cfg);
  prime_table tab = sieve(100000);
  variance_report rep = variance_vl(tab, lad, 1);
  REQUIRE(rep.exact_available);
  CHECK_FALSE(rep.surrogate);
  // oracle: direct sum of 1/(2 p^{2 sigma}) + 1/(8 p^{4 sigma}) over (1000, 100000]
  kahan_sum brute;
  for (uint32_t p : tab.primes)
    if (p > 1000 && p <= 100000)
      brute.add(0.5 * std::pow(p, -2.0 * lad.sigma) +
                0.125 * std::pow(p, -4.0 * lad.sigma));
  CHECK(rep.exact == doctest::Approx(brute.value()).epsilon(1e-13));
  CHECK(rep.used == rep.exact);
  CHECK(rep.analytic ==
        doctest::Approx(0.5 * (lad.levels[0] - lad.t0) - 1.0).epsilon(1e-12));
  // out of range level
  CHECK_THROWS_AS(variance_vl(tab, lad, 2), config_error);
  // surrogate path when T_ell overflows the table
  ladder_config big;
  big.mode = ladder_mode::from_t;
  big.t = 1000.0;
  big.alpha = 1.0;
  big.delta = 1.0;
  ladder blad = build_ladder(big);
  variance_report srep = variance_vl(tab, blad, blad.L);
  CHECK(srep.surrogate);
  CHECK(srep.used ==
        doctest::Approx(0.5 * (blad.levels.back() - blad.t0) - 1.0).epsilon(1e-12));
}

TEST_CASE("sieve budget honours the environment override") {
  CHECK(sieve_budget() >= 1000000000ull);
  CHECK_THROWS_AS(sieve(sieve_budget() + 1), budget_error);
}
