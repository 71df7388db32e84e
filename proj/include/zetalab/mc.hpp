// Deterministic Monte Carlo driver.
//
// Samples are pure functions of their index (see rng.hpp), so parallelism
// only has to preserve the reduction order to make results independent of
// the worker count.  Samples are grouped into fixed blocks of 1024; each
// block is summed sequentially in index order, workers claim whole blocks
// round-robin, and the per-block sums are combined by a fixed-shape pairwise
// tree.  The float result is a function of (n, dim, sample values) only.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace zetalab {

inline constexpr std::size_t mc_block_size = 1024;

struct block_stats {
  std::size_t n = 0;
  std::size_t dim = 0;
  // per-block sums, laid out sums[block * dim + d]
  std::vector<double> sums;
};

// fn(i, out) writes dim accumulands for sample i into out[0..dim)
block_stats mc_blocks(std::size_t n, std::size_t dim,
                      const std::function<void(std::size_t, double*)>& fn,
                      int workers);

// pairwise totals per dimension
std::vector<double> mc_totals(const block_stats& bs);

// convenience: mean of a scalar statistic
double mc_mean(std::size_t n, const std::function<double(std::size_t)>& fn,
               int workers);

// full sample vector (for distribution tests); trivially worker-invariant
std::vector<double> mc_samples(std::size_t n,
                               const std::function<double(std::size_t)>& fn,
                               int workers);

}  // namespace zetalab
