#include "atrous/numeric.hpp"

namespace atrous {

namespace {
constexpr std::size_t kBaseBlock = 16;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= kBaseBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_energy(const double* x, std::size_t n) {
  if (n <= kBaseBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_energy(x, half) + pairwise_energy(x + half, n - half);
}

double pairwise_weighted_energy(const double* x, const double* w, std::size_t n) {
  if (n <= kBaseBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_weighted_energy(x, w, half) +
         pairwise_weighted_energy(x + half, w + half, n - half);
}

} // namespace atrous
