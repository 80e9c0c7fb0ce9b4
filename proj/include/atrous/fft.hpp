#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace atrous::fft {

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// In-place radix-2 transform; size must be a power of two.
/// Inverse includes the 1/n scaling.
void transform(std::vector<std::complex<double>>& a, bool inverse);

/// Full linear convolution, length x.size() + h.size() - 1, O(n m).
std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> h);

/// Full linear convolution via zero-padded FFTs.
std::vector<double> convolve_fft(std::span<const double> x, std::span<const double> h);

// Dispatches on filter length: short filters go direct, long ones through the
// FFT path. Both routes agree within 1e-12 of full scale.
inline constexpr std::size_t kFftConvolutionThreshold = 129;
std::vector<double> convolve(std::span<const double> x, std::span<const double> h);

/// Magnitude spectrum of Hann-windowed x, zero-padded to at least twice the
/// next power of two. Returns bins covering [0, fs/2]; bin k maps to
/// k * fs / fft_size.
struct MagnitudeSpectrum {
  std::vector<double> magnitude;
  std::size_t fft_size = 0;
};
MagnitudeSpectrum windowed_spectrum(std::span<const double> x);

} // namespace atrous::fft
