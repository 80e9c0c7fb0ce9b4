#include "atrous/fft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace atrous::fft {

namespace {

// Forward-direction twiddle tables, cached per transform size.
const std::vector<std::complex<double>>& twiddles(std::size_t n) {
  static std::unordered_map<std::size_t, std::vector<std::complex<double>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(angle), std::sin(angle)};
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

void bit_reverse_permute(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

} // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void transform(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft: size must be a power of two");
  if (n == 1) return;

  bit_reverse_permute(a);
  const auto& tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = tw[k * step];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = a[base + k];
        const std::complex<double> v = a[base + k + half] * w;
        a[base + k] = u + v;
        a[base + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= scale;
  }
}

std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> h) {
  if (x.empty() || h.empty())
    throw std::invalid_argument("convolve: empty input");
  std::vector<double> out(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += xi * h[j];
  }
  return out;
}

std::vector<double> convolve_fft(std::span<const double> x, std::span<const double> h) {
  if (x.empty() || h.empty())
    throw std::invalid_argument("convolve: empty input");
  const std::size_t out_len = x.size() + h.size() - 1;
  const std::size_t n = next_pow2(out_len);

  std::vector<std::complex<double>> xs(n), hs(n);
  for (std::size_t i = 0; i < x.size(); ++i) xs[i] = x[i];
  for (std::size_t i = 0; i < h.size(); ++i) hs[i] = h[i];
  transform(xs, false);
  transform(hs, false);
  for (std::size_t i = 0; i < n; ++i) xs[i] *= hs[i];
  transform(xs, true);

  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = xs[i].real();
  return out;
}

std::vector<double> convolve(std::span<const double> x, std::span<const double> h) {
  return h.size() >= kFftConvolutionThreshold ? convolve_fft(x, h) : convolve_direct(x, h);
}

MagnitudeSpectrum windowed_spectrum(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("windowed_spectrum: empty input");
  const std::size_t n = x.size();
  const std::size_t nfft = next_pow2(n) * 2;

  std::vector<std::complex<double>> buf(nfft);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    buf[i] = x[i] * w;
  }
  transform(buf, false);

  MagnitudeSpectrum spec;
  spec.fft_size = nfft;
  spec.magnitude.resize(nfft / 2 + 1);
  for (std::size_t k = 0; k <= nfft / 2; ++k) spec.magnitude[k] = std::abs(buf[k]);
  return spec;
}

} // namespace atrous::fft
