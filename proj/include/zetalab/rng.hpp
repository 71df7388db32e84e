// Counter-based random streams.
//
// Every draw is a pure function of (seed, stream, lane, index): the Philox
// 4x64 block cipher with 10 rounds maps the counter {index, lane, stream, 0}
// under key {seed, 0} to four 64-bit words.  Monte Carlo code indexes draws
// by sample and by prime, so any partition of the work over workers sees the
// same numbers -- reproducibility is a property of the algebra, not of the
// scheduling.  Lanes keep the phase draws and the Gaussian draws of one
// sample from colliding.
//
// The generator matches the reference Philox implementation bit for bit
// (known-answer vectors in the tests were produced with an independent
// implementation).  Uniforms take the top 53 bits of a word; normals are
// Box-Muller pairs from one block.

#pragma once

#include <array>
#include <cstdint>

namespace zetalab {

std::array<uint64_t, 4> philox4x64(const std::array<uint64_t, 4>& ctr,
                                   const std::array<uint64_t, 2>& key);

// Fixed lane assignments used across the model modules.
enum : uint64_t {
  lane_phase = 0,   // uniform angles theta_p
  lane_gauss = 1,   // Gaussian surrogate draws Z_p
  lane_tau = 2,     // sample points tau
  lane_scratch = 3  // module-local scratch draws
};

class rng_stream {
 public:
  rng_stream(uint64_t seed, uint64_t stream) : key_{seed, 0}, stream_(stream) {}

  std::array<uint64_t, 4> block(uint64_t lane, uint64_t index) const {
    return philox4x64({index, lane, stream_, 0}, key_);
  }

  // U[0, 1) from the top 53 bits of word 0.
  double uniform(uint64_t lane, uint64_t index) const;

  // Standard normal via Box-Muller on words 0 and 1 of one block.
  double normal(uint64_t lane, uint64_t index) const;

  uint64_t stream() const { return stream_; }

 private:
  std::array<uint64_t, 2> key_;
  uint64_t stream_;
};

}  // namespace zetalab
