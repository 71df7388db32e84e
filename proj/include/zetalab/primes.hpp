#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "zetalab/params.hpp"

// Prime enumeration and prime-weighted sums.
//
// The sieve is a segmented Eratosthenes over a mod-30 wheel (2,3,5 stripped),
// one bit per coprime residue, so a segment of 256 KiB covers ~7.8 million
// integers.  The default limit budget of 1e9 can be tightened through the
// ZETALAB_SIEVE_LIMIT environment variable; asking beyond the budget raises
// budget_error rather than thrashing.
namespace zetalab {

struct prime_table {
  uint64_t limit = 0;
  std::vector<uint32_t> primes;
  std::vector<double> logs;  // log p, same indexing as primes

  // Index range [first, second) of primes in the half-open interval (lo, hi].
  std::pair<size_t, size_t> range(double lo, double hi) const;
  size_t count(double x) const;  // pi(x)
};

prime_table sieve(uint64_t limit);

uint64_t sieve_budget();  // current limit budget (env override or 1e9)

// Sum over primes lo < p <= hi of sum_j w_j * p^{-c_j}, compensated, in
// ascending prime order.
struct power_term {
  double weight = 0.0;
  double exponent = 0.0;
};
double prime_power_sum(const prime_table& table, double lo, double hi,
                       const std::vector<power_term>& terms);

// Variance of the Gaussian increment Z_ell:
//   v_ell^2 = sum_{T_0 < p <= T_ell} (1/(2 p^{2 sigma}) + 1/(8 p^{4 sigma}))
// with the analytic stand-in  (t_ell - t_0)/2 - delta e^{t_ell - t_L}  used
// when the prime range is beyond the table (surrogate mode).
struct variance_report {
  double analytic = 0.0;
  double exact = 0.0;
  bool exact_available = false;
  double difference = 0.0;  // exact - analytic when available
  double used = 0.0;
  bool surrogate = false;
};
variance_report variance_vl(const prime_table& table, const ladder& lad, int ell);

// log X * prod_{p <= X} (1 - 1/p): tends to e^{-gamma} (Mertens).
double mertens_product(const prime_table& table, double X);

}  // namespace zetalab
