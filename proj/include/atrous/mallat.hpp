#pragma once

#include <vector>

#include "atrous/signal.hpp"

namespace atrous {

/// Analysis/synthesis filter quadruple for the decimated dyadic transform.
/// Analysis correlates at even offsets; synthesis convolves the upsampled
/// bands. The pair must reconstruct an impulse through one round trip within
/// 1e-10.
struct QmfPair {
  std::vector<double> analysis_lowpass;
  std::vector<double> analysis_highpass;
  std::vector<double> synthesis_lowpass;
  std::vector<double> synthesis_highpass;

  /// Shortest orthogonal pair; maximally visible aliasing.
  static QmfPair haar();
};

/// Classic decimated pyramid: filter, downsample by two, recurse on the low
/// band. Returns num_stages detail bands (highest first) plus the final
/// approximation, each at its own halved sample rate.
std::vector<Signal> mallat_decompose(const Signal& signal, const QmfPair& filters,
                                     int num_stages);

/// Full decompose / zero one band / full resynthesis, back at the original
/// rate and length. band_index follows mallat_decompose ordering.
Signal mallat_resynth_with_zeroed_band(const Signal& signal, const QmfPair& filters,
                                       int num_stages, int band_index);

/// Level, in dB relative to the tone, of the loudest spectral peak of
/// `modified` at any frequency at least 5% of Nyquist away from the tone and
/// its harmonics. `original` supplies the tone's reference level. Roughly
/// -200 dB for an unmodified signal; 0 dB for an equal-level spurious
/// component.
double aliasing_metric(const Signal& original, const Signal& modified, double tone_hz);

} // namespace atrous
