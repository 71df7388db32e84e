#include "zetalab/rng.hpp"

#include <cmath>

namespace zetalab {

namespace {

constexpr uint64_t kM0 = 0xD2E7470EE14C6C93ull;
constexpr uint64_t kM1 = 0xCA5A826395121157ull;
constexpr uint64_t kW0 = 0x9E3779B97F4A7C15ull;  // golden-ratio Weyl constants
constexpr uint64_t kW1 = 0xBB67AE8584CAA73Bull;

inline uint64_t mulhilo(uint64_t a, uint64_t b, uint64_t& lo) {
  __uint128_t w = static_cast<__uint128_t>(a) * b;
  lo = static_cast<uint64_t>(w);
  return static_cast<uint64_t>(w >> 64);
}

inline std::array<uint64_t, 4> round_fn(const std::array<uint64_t, 4>& c,
                                        const std::array<uint64_t, 2>& k) {
  uint64_t lo0, lo1;
  uint64_t hi0 = mulhilo(kM0, c[0], lo0);
  uint64_t hi1 = mulhilo(kM1, c[2], lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<uint64_t, 4> philox4x64(const std::array<uint64_t, 4>& ctr,
                                   const std::array<uint64_t, 2>& key) {
  std::array<uint64_t, 4> c = ctr;
  std::array<uint64_t, 2> k = key;
  c = round_fn(c, k);
  for (int r = 1; r < 10; ++r) {
    k[0] += kW0;
    k[1] += kW1;
    c = round_fn(c, k);
  }
  return c;
}

double rng_stream::uniform(uint64_t lane, uint64_t index) const {
  auto b = block(lane, index);
  return static_cast<double>(b[0] >> 11) * 0x1.0p-53;
}

double rng_stream::normal(uint64_t lane, uint64_t index) const {
  auto b = block(lane, index);
  // u in (0, 1] so the logarithm is finite; v in [0, 1)
  double u = (static_cast<double>(b[0] >> 11) + 1.0) * 0x1.0p-53;
  double v = static_cast<double>(b[1] >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

}  // namespace zetalab
