#pragma once

#include <cstddef>

namespace atrous {

// Left-to-right pairwise summation. Fixed evaluation order keeps results
// deterministic and the error bound grows with log(n) instead of n.
double pairwise_sum(const double* x, std::size_t n);

/// Sum of squares of x[0..n).
double pairwise_energy(const double* x, std::size_t n);

/// Sum of w[i] * x[i]^2 over [0, n).
double pairwise_weighted_energy(const double* x, const double* w, std::size_t n);

/// Compensated running sum for cumulative statistics.
struct KahanAccumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

} // namespace atrous
