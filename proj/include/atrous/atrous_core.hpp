#pragma once

#include <span>
#include <utility>
#include <vector>

#include "atrous/mappings.hpp"
#include "atrous/signal.hpp"

namespace atrous {

/// Full-rate subbands of one decomposition. Details run from the highest band
/// down; the final approximation carries everything below the last cutoff,
/// including DC. Every subband is time-aligned with the input: sample n of any
/// band corresponds to input sample n.
struct SubbandSet {
  std::vector<Signal> details;
  Signal final_approximation;
  std::vector<BandLabel> band_labels; // details order, then the final approximation
  std::vector<int> stage_delays;      // per plan stage, samples
  std::size_t original_length = 0;

  std::size_t num_bands() const { return details.size() + 1; }

  const Signal& band(std::size_t index) const {
    return index < details.size() ? details[index] : final_approximation;
  }
};

/// One analysis step. The new approximation is the full convolution of the
/// input with the stage filter, with the leading tau samples (the non-causal
/// part of the linear-phase response) removed; the detail is the input,
/// zero-padded at its end by tau, minus that approximation. Both outputs have
/// length len(input) + tau and their sum restores the padded input exactly.
std::pair<Signal, Signal> decompose_stage(const Signal& approx, const FirFilter& stage_filter);

/// Runs every plan stage, feeding each output to its consumers. Stereo input
/// is processed per channel with the identical plan.
SubbandSet decompose(const Signal& signal, const DecompositionPlan& plan);

/// Zero-pads every subband to the longest, forms the gain-weighted sum, and
/// truncates the trailing filter tails beyond the original length. One gain
/// per band, in band order (1 keeps, 0 mutes, anything else scales); unit
/// gains reproduce the input.
Signal synthesize(const SubbandSet& subbands, std::span<const double> gains);

/// Convolves and removes the group delay, so the output stays aligned with
/// the input (length grows by tau). For per-subband processing ahead of the
/// mix.
Signal apply_fir(const Signal& signal, const FirFilter& filter);

/// Single-channel view of one channel of a stereo decomposition.
SubbandSet extract_channel(const SubbandSet& subbands, int channel);

} // namespace atrous
