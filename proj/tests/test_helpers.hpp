#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "atrous/signal.hpp"

namespace testing_helpers {

// mt19937 output is fully specified, so noise built directly from its words
// is reproducible on every platform.
inline std::vector<double> make_noise(std::uint32_t seed, std::size_t len) {
  std::mt19937 eng(seed);
  std::vector<double> x(len);
  for (auto& v : x) v = (static_cast<double>(eng()) + 0.5) / 4294967296.0 * 2.0 - 1.0;
  return x;
}

inline std::vector<double> make_tone(double freq_hz, double fs, std::size_t len,
                                     double amplitude = 1.0, double phase = 0.0) {
  std::vector<double> x(len);
  for (std::size_t n = 0; n < len; ++n)
    x[n] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(n) / fs + phase);
  return x;
}

inline std::vector<double> make_impulse(std::size_t len, std::size_t pos) {
  std::vector<double> x(len, 0.0);
  x[pos] = 1.0;
  return x;
}

// Unipolar rectangular pulse train (mean = width / period).
inline std::vector<double> make_pulse_train(std::size_t len, std::size_t period, std::size_t width) {
  std::vector<double> x(len, 0.0);
  for (std::size_t start = 0; start < len; start += period)
    for (std::size_t i = start; i < std::min(len, start + width); ++i) x[i] = 1.0;
  return x;
}

// Independent O(n m) convolution oracle.
inline std::vector<double> naive_convolve(const std::vector<double>& x,
                                          const std::vector<double>& h) {
  std::vector<double> out(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += x[i] * h[j];
  return out;
}

inline double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

inline double relative_rms_error(const std::vector<double>& got,
                                 const std::vector<double>& want) {
  double err = 0.0, ref = 0.0;
  const std::size_t n = std::min(got.size(), want.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = got[i] - want[i];
    err += d * d;
    ref += want[i] * want[i];
  }
  for (std::size_t i = n; i < got.size(); ++i) err += got[i] * got[i];
  for (std::size_t i = n; i < want.size(); ++i) {
    err += want[i] * want[i];
    ref += want[i] * want[i];
  }
  return ref == 0.0 ? std::sqrt(err) : std::sqrt(err / ref);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double av = i < a.size() ? a[i] : 0.0;
    const double bv = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::abs(av - bv));
  }
  return m;
}

} // namespace testing_helpers
