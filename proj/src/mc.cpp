#include "zetalab/mc.hpp"

#include <stdexcept>
#include <thread>

#include "zetalab/accum.hpp"

namespace zetalab {

block_stats mc_blocks(std::size_t n, std::size_t dim,
                      const std::function<void(std::size_t, double*)>& fn,
                      int workers) {
  if (workers < 1) throw std::invalid_argument("mc_blocks: workers < 1");
  block_stats bs;
  bs.n = n;
  bs.dim = dim;
  std::size_t nblocks = (n + mc_block_size - 1) / mc_block_size;
  bs.sums.assign(nblocks * dim, 0.0);

  auto run_block = [&](std::size_t b) {
    std::size_t lo = b * mc_block_size;
    std::size_t hi = std::min(lo + mc_block_size, n);
    std::vector<kahan_sum> acc(dim);
    std::vector<double> out(dim);
    for (std::size_t i = lo; i < hi; ++i) {
      fn(i, out.data());
      for (std::size_t d = 0; d < dim; ++d) acc[d].add(out[d]);
    }
    for (std::size_t d = 0; d < dim; ++d) bs.sums[b * dim + d] = acc[d].value();
  };

  if (workers == 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = static_cast<std::size_t>(w); b < nblocks;
             b += static_cast<std::size_t>(workers))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  return bs;
}

std::vector<double> mc_totals(const block_stats& bs) {
  std::size_t nblocks = bs.dim == 0 ? 0 : bs.sums.size() / bs.dim;
  std::vector<double> totals(bs.dim, 0.0);
  std::vector<double> column(nblocks);
  for (std::size_t d = 0; d < bs.dim; ++d) {
    for (std::size_t b = 0; b < nblocks; ++b) column[b] = bs.sums[b * bs.dim + d];
    totals[d] = pairwise_reduce(column);
  }
  return totals;
}

double mc_mean(std::size_t n, const std::function<double(std::size_t)>& fn,
               int workers) {
  block_stats bs = mc_blocks(
      n, 1, [&](std::size_t i, double* out) { out[0] = fn(i); }, workers);
  return mc_totals(bs)[0] / static_cast<double>(n);
}

std::vector<double> mc_samples(std::size_t n,
                               const std::function<double(std::size_t)>& fn,
                               int workers) {
  std::vector<double> xs(n);
  if (workers < 1) throw std::invalid_argument("mc_samples: workers < 1");
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) xs[i] = fn(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(workers))
          xs[i] = fn(i);
      });
    for (auto& th : pool) th.join();
  }
  return xs;
}

}  // namespace zetalab
