#pragma once

#include <ostream>
#include <vector>

namespace atrous {

enum class Window { blackman, hamming, rectangular };

/// Odd-length linear-phase FIR low-pass. Coefficients are symmetric about the
/// center tap and sum to one, so the filter is zero-phase after its group
/// delay is removed and passes DC untouched.
struct FirFilter {
  std::vector<double> coefficients;
  double nominal_cutoff_hz = 0.0;
  double design_sample_rate_hz = 0.0;

  int num_taps() const { return static_cast<int>(coefficients.size()); }
};

/// Throws std::invalid_argument unless the filter is odd-length, exactly
/// symmetric, and unit-gain at DC (within 1e-12).
void validate(const FirFilter& f);

/// Windowed-sinc low-pass with unit DC gain. The magnitude response crosses
/// roughly -6 dB at the cutoff whenever the transition band is narrow
/// relative to the cutoff.
FirFilter design_lowpass(double cutoff_hz, double sample_rate_hz, int num_taps,
                         Window window_kind = Window::blackman);

/// Dilates the filter by inserting one zero between each pair of taps.
/// Length goes from N to 2N-1 (odd preserved); the nominal cutoff halves.
FirFilter oversample_filter(const FirFilter& f);

/// Constant delay of the linear-phase filter: (num_taps - 1) / 2 samples,
/// exact for odd tap counts.
int group_delay(const FirFilter& f);

/// Zero-phase amplitude at freq_hz, i.e. the real response left after the
/// group delay is removed. May be negative in the stopband.
double amplitude_response(const FirFilter& f, double freq_hz);

/// One coefficient per line under a `# taps=... cutoff_hz=... fs=...` header.
void write_filter_csv(std::ostream& os, const FirFilter& f);

} // namespace atrous
