#include "zetalab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "zetalab/accum.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/params.hpp"

namespace zetalab {

namespace {

// Wheel mod 30: the 8 residues coprime to 30 and the gaps between them.
constexpr uint32_t kWheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
constexpr uint32_t kGap[8] = {6, 4, 2, 4, 2, 4, 6, 2};  // kWheel[i+1]-kWheel[i] cyclic

struct wheel_tables {
  uint8_t pos[30];        // residue -> bit index, 0xff if not coprime
  uint8_t next_off[30];   // distance to the next coprime residue (incl. self)
  uint8_t next_idx[30];   // bit index of that residue
  wheel_tables() {
    std::memset(pos, 0xff, sizeof pos);
    for (int i = 0; i < 8; ++i) pos[kWheel[i]] = static_cast<uint8_t>(i);
    for (int r = 0; r < 30; ++r) {
      int d = 0;
      while (pos[(r + d) % 30] == 0xff) ++d;
      next_off[r] = static_cast<uint8_t>(d);
      next_idx[r] = pos[(r + d) % 30];
    }
  }
};
const wheel_tables kTab;

constexpr size_t kSegBytes = 1 << 18;  // 256 KiB bitmap = 7.8M numbers per segment

}  // namespace

uint64_t sieve_budget() {
  if (const char* env = std::getenv("ZETALAB_SIEVE_LIMIT")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return static_cast<uint64_t>(v);
  }
  return 1000000000ull;
}

prime_table sieve(uint64_t limit) {
  if (limit > sieve_budget())
    throw budget_error("sieve limit " + std::to_string(limit) +
                       " exceeds budget " + std::to_string(sieve_budget()) +
                       " (raise ZETALAB_SIEVE_LIMIT to override)");
  prime_table tab;
  tab.limit = limit;
  if (limit >= 2) tab.primes.push_back(2);
  if (limit >= 3) tab.primes.push_back(3);
  if (limit >= 5) tab.primes.push_back(5);
  if (limit >= 7) {
    // Base primes up to sqrt(limit) by a plain odd sieve.
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 2;
    while (root * root > limit + 1) --root;
    std::vector<uint8_t> small(root + 1, 1);
    for (uint64_t p = 3; p * p <= root; p += 2)
      if (small[p])
        for (uint64_t q = p * p; q <= root; q += 2 * p) small[q] = 0;
    std::vector<uint32_t> base;       // base primes >= 7
    std::vector<uint64_t> next_mult;  // per base prime: next multiple to cross off
    std::vector<uint8_t> quot_idx;    // wheel index of the quotient of that multiple
    for (uint64_t p = 7; p <= root; p += 2)
      if (small[p] && p % 3 && p % 5) {
        base.push_back(static_cast<uint32_t>(p));
        next_mult.push_back(p * p);
        quot_idx.push_back(kTab.pos[p % 30]);
      }

    std::vector<uint8_t> seg(kSegBytes);
    for (uint64_t seg_base = 0; seg_base <= limit; seg_base += 30ull * kSegBytes) {
      uint64_t seg_end = std::min<uint64_t>(seg_base + 30ull * kSegBytes, limit + 1);
      std::fill(seg.begin(), seg.end(), 0);
      for (size_t i = 0; i < base.size(); ++i) {
        uint64_t p = base[i];
        if (p * p >= seg_end) break;
        uint64_t m = next_mult[i];
        uint32_t gi = quot_idx[i];
        while (m < seg_end) {
          uint64_t off = m - seg_base;
          seg[off / 30] |= static_cast<uint8_t>(1u << kTab.pos[off % 30]);
          m += p * kGap[gi];
          gi = (gi + 1) & 7;
        }
        next_mult[i] = m;
        quot_idx[i] = static_cast<uint8_t>(gi);
      }
      uint64_t nbytes = (seg_end - seg_base + 29) / 30;
      for (uint64_t j = 0; j < nbytes; ++j) {
        uint8_t bits = static_cast<uint8_t>(~seg[j]);
        while (bits) {
          int b = __builtin_ctz(bits);
          bits &= static_cast<uint8_t>(bits - 1);
          uint64_t n = seg_base + 30 * j + kWheel[b];
          if (n >= 7 && n <= limit) tab.primes.push_back(static_cast<uint32_t>(n));
        }
      }
    }
    std::sort(tab.primes.begin(), tab.primes.end());
  }
  tab.logs.resize(tab.primes.size());
  for (size_t i = 0; i < tab.primes.size(); ++i)
    tab.logs[i] = std::log(static_cast<double>(tab.primes[i]));
  return tab;
}

std::pair<size_t, size_t> prime_table::range(double lo, double hi) const {
  auto cmp = [](double v, uint32_t p) { return v < static_cast<double>(p); };
  auto first = std::upper_bound(primes.begin(), primes.end(), lo, cmp);
  auto last = std::upper_bound(primes.begin(), primes.end(), hi, cmp);
  return {static_cast<size_t>(first - primes.begin()),
          static_cast<size_t>(last - primes.begin())};
}

size_t prime_table::count(double x) const { return range(0.0, x).second; }

double prime_power_sum(const prime_table& tab, double lo, double hi,
                       const std::vector<power_term>& terms) {
  auto [a, b] = tab.range(lo, hi);
  kahan_sum acc;
  for (const auto& [w, c] : terms)
    for (size_t i = a; i < b; ++i) acc.add(w * std::exp(-c * tab.logs[i]));
  return acc.value();
}

double mertens_product(const prime_table& tab, double X) {
  auto [a, b] = tab.range(0.0, X);
  (void)a;
  kahan_sum lg;
  for (size_t i = 0; i < b; ++i)
    lg.add(std::log1p(-1.0 / static_cast<double>(tab.primes[i])));
  return std::log(X) * std::exp(lg.value());
}

variance_report variance_vl(const prime_table& tab, const ladder& lad, int ell) {
  if (ell < 1 || ell > lad.L) throw config_error("variance level out of range");
  variance_report rep{};
  double tL = lad.levels.back();
  double te = lad.t_level(ell);
  rep.analytic = 0.5 * (te - lad.t0) - lad.delta * std::exp(te - tL);
  double T0 = lad.T_level(0), Te = lad.T_level(ell);
  rep.exact_available =
      std::isfinite(Te) && Te <= static_cast<double>(tab.limit);
  if (rep.exact_available) {
    rep.exact = prime_power_sum(tab, T0, Te,
                                {{0.5, 2.0 * lad.sigma}, {0.125, 4.0 * lad.sigma}});
    rep.difference = rep.exact - rep.analytic;
    rep.used = rep.exact;
    rep.surrogate = false;
  } else {
    rep.exact = 0.0;
    rep.difference = 0.0;
    rep.used = rep.analytic;
    rep.surrogate = true;
  }
  return rep;
}

}  // namespace zetalab
