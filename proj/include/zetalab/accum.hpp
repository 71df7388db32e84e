#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

// Compensated summation helpers.  Long prime sums and Monte Carlo reductions
// accumulate 1e5..1e8 terms; plain left-to-right addition loses ~1e-11 of
// relative accuracy there, which matters for the 1e-12 reproducibility and
// telescoping tolerances used throughout.  Kahan-Neumaier compensation keeps
// the error at a few ulps independent of term count, and is deterministic for
// a fixed evaluation order.
namespace zetalab {

class kahan_sum {
 public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Fixed-shape pairwise reduction.  The tree shape depends only on the vector
// length, never on thread scheduling, so reductions over per-block partials
// are bit-identical for any worker count.
inline double pairwise_reduce(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo == 0) return 0.0;
  if (hi - lo == 1) return v[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_reduce(v, lo, mid) + pairwise_reduce(v, mid, hi);
}

inline double pairwise_reduce(const std::vector<double>& v) {
  return pairwise_reduce(v, 0, v.size());
}

}  // namespace zetalab
