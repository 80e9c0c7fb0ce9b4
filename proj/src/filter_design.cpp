#include "atrous/filter_design.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace atrous {

namespace {

double window_value(Window kind, int n, int num_taps) {
  if (num_taps == 1) return 1.0;
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) /
                       static_cast<double>(num_taps - 1);
  switch (kind) {
    case Window::blackman:
      return 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
    case Window::hamming:
      return 0.54 - 0.46 * std::cos(phase);
    case Window::rectangular:
      return 1.0;
  }
  throw std::invalid_argument("unknown window kind");
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

} // namespace

void validate(const FirFilter& f) {
  const int n = f.num_taps();
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("filter: tap count must be a positive odd number");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (f.coefficients[static_cast<std::size_t>(i)] !=
        f.coefficients[static_cast<std::size_t>(n - 1 - i)])
      throw std::invalid_argument("filter: coefficients must be symmetric about the center tap");
    sum += f.coefficients[static_cast<std::size_t>(i)];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("filter: DC gain must be 1 within 1e-12");
}

FirFilter design_lowpass(double cutoff_hz, double sample_rate_hz, int num_taps,
                         Window window_kind) {
  if (sample_rate_hz <= 0.0)
    throw std::invalid_argument("design_lowpass: sample rate must be positive");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0))
    throw std::invalid_argument("design_lowpass: cutoff must lie in (0, Nyquist)");
  if (num_taps < 3 || num_taps % 2 == 0)
    throw std::invalid_argument("design_lowpass: tap count must be odd and >= 3");

  FirFilter f;
  f.coefficients.resize(static_cast<std::size_t>(num_taps));
  f.nominal_cutoff_hz = cutoff_hz;
  f.design_sample_rate_hz = sample_rate_hz;

  // Compute one half and mirror so symmetry is exact in floating point.
  const int center = (num_taps - 1) / 2;
  const double fc = cutoff_hz / sample_rate_hz;
  double sum = 0.0;
  for (int i = 0; i <= center; ++i) {
    const double c = 2.0 * fc * sinc(2.0 * fc * static_cast<double>(i - center)) *
                     window_value(window_kind, i, num_taps);
    f.coefficients[static_cast<std::size_t>(i)] = c;
    f.coefficients[static_cast<std::size_t>(num_taps - 1 - i)] = c;
    sum += (i == center) ? c : 2.0 * c;
  }
  for (auto& c : f.coefficients) c /= sum;
  return f;
}

FirFilter oversample_filter(const FirFilter& f) {
  validate(f);
  const std::size_t n = f.coefficients.size();
  FirFilter out;
  out.coefficients.assign(2 * n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.coefficients[2 * i] = f.coefficients[i];
  out.nominal_cutoff_hz = f.nominal_cutoff_hz / 2.0;
  out.design_sample_rate_hz = f.design_sample_rate_hz;
  return out;
}

int group_delay(const FirFilter& f) {
  const int n = f.num_taps();
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("group_delay: tap count must be a positive odd number");
  return (n - 1) / 2;
}

double amplitude_response(const FirFilter& f, double freq_hz) {
  const int n = f.num_taps();
  const int tau = (n - 1) / 2;
  const double omega = 2.0 * std::numbers::pi * freq_hz / f.design_sample_rate_hz;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += f.coefficients[static_cast<std::size_t>(i)] * std::cos(omega * static_cast<double>(i - tau));
  return acc;
}

void write_filter_csv(std::ostream& os, const FirFilter& f) {
  char header[128];
  std::snprintf(header, sizeof(header), "# taps=%d cutoff_hz=%.9g fs=%.9g", f.num_taps(),
                f.nominal_cutoff_hz, f.design_sample_rate_hz);
  os << header << '\n';
  char line[64];
  for (double c : f.coefficients) {
    std::snprintf(line, sizeof(line), "%.17g", c);
    os << line << '\n';
  }
}

} // namespace atrous
