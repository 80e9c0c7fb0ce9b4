#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atrous/filter_design.hpp"

namespace atrous {

enum class MappingKind { dyadic, audio, leipp };

struct BandLabel {
  std::string name;
  double f_low_hz = 0.0;
  double f_high_hz = 0.0;
};

/// One filtering step. Consumes either the original input (source_stage < 0)
/// or one output of an earlier stage, and produces a low-pass approximation
/// plus the complementary detail. Outputs that no later stage consumes are
/// terminal subbands and must carry a label.
struct PlanStage {
  FirFilter filter;
  int source_stage = -1;
  bool source_is_detail = false;
  std::optional<BandLabel> approx_label;
  std::optional<BandLabel> detail_label;
};

struct DecompositionPlan {
  MappingKind mapping_kind = MappingKind::dyadic;
  double sample_rate_hz = 0.0;
  std::vector<PlanStage> stages;

  std::size_t num_bands() const;

  /// Terminal band labels ordered from the highest band down to the lowest
  /// (the 0 Hz approximation band last) — the subband order of decompose().
  std::vector<BandLabel> band_labels() const;
};

/// Structural checks: sources precede consumers, every output is either
/// consumed once or labeled, cutoffs decrease along approximation chains, and
/// the labels tile (0, Nyquist] with no gaps or overlaps.
void validate(const DecompositionPlan& plan);

/// Successive halving of the spectrum: stage j cuts at Fs / 2^(j+2) using the
/// (j-fold) zero-inserted dilation of a half-band low-pass.
DecompositionPlan dyadic_plan(double sample_rate_hz, int num_stages, int base_taps);

/// Octave analysis of 0-8 kHz by iterated dilation of an 8 kHz low-pass, with
/// the 8 kHz-Nyquist detail split at 16 kHz by an independently designed
/// filter. The 8 kHz filter seeds the dilation chain; the 16 kHz one cannot,
/// since its dilated copies would cut above half the Nyquist frequency at
/// common audio rates. Optionally splits 8-16 kHz once more at 12 kHz.
DecompositionPlan audio_plan(double sample_rate_hz, int num_suboctaves, int base_taps,
                             bool split_8_16_at_12k = false);

inline constexpr int kAudioDefaultSuboctaves = 7;

/// Ten sensible bands after Leipp, edges 0, 50, 200, 400, 800, 1200, 1800,
/// 3000, 6000, 16000, Fs/2 Hz, realized as a descending cascade of
/// independently designed low-pass filters.
DecompositionPlan leipp_plan(double sample_rate_hz, int taps = 499);

/// Edge frequencies of a plan, ascending, length num_bands() + 1.
std::vector<double> band_edges(const DecompositionPlan& plan);

/// "62.5-125Hz" style range name used for dyadic and audio bands.
std::string band_range_name(double f_low_hz, double f_high_hz);

} // namespace atrous
