#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "atrous/atrous_core.hpp"

namespace atrous {

enum class ChannelMode { mono, stereo_independent, stereo_joint };

/// Relative energy balance: per band, the sum of squared samples as a
/// percentage of the total. Weights sum to 100 per normalization group.
struct IsdReport {
  std::vector<double> weights_percent;
  std::vector<BandLabel> band_labels;
  double total_energy = 0.0;
  ChannelMode channel_mode = ChannelMode::mono;
};

enum class TisdVariant { instant, windowed, cumulative, gradient };

/// Time-evolving energy balance, band x time, in percent (percent-difference
/// for the gradient variant). Instants where the normalizer vanishes are kept
/// as gap columns so the time axis stays aligned.
struct TisdSeries {
  TisdVariant variant = TisdVariant::instant;
  std::vector<double> times_s;
  std::vector<std::vector<double>> values; // [band][time]
  std::vector<BandLabel> band_labels;
  std::optional<int> window_len; // samples, windowed only
  std::optional<int> hop;        // samples, windowed only

  std::size_t num_bands() const { return values.size(); }
  std::size_t num_frames() const { return times_s.size(); }
};

/// Gap marker for silent instants.
inline double tisd_gap() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_tisd_gap(double v) { return std::isnan(v); }

// Fig-9-style defaults for the sliding-window variant.
inline constexpr int kDefaultTisdWindowLen = 2048;
inline constexpr int kDefaultTisdHop = 1;

/// Global energy balance of a mono decomposition.
/// Throws SilentInputError when every subband is all-zero.
IsdReport isd(const SubbandSet& subbands);

/// Per-sample balance: weight_b[n] = 100 * x_b[n]^2 / sum_b x_b[n]^2.
TisdSeries tisd_instant(const SubbandSet& subbands);

/// Sliding-window balance; frame times are window centers.
TisdSeries tisd_windowed(const SubbandSet& subbands, int window_len, int hop,
                         Window window_kind = Window::rectangular);

/// Running balance with the normalizer updated at every sample; the final
/// column matches the global ISD.
TisdSeries tisd_cumulative(const SubbandSet& subbands);

/// First difference along time (input[-1] taken as 0); the cumulative sum of
/// the output restores the source series. Rejects gradient-of-gradient.
TisdSeries tisd_gradient(const TisdSeries& series);

/// Stereo balance from two per-channel decompositions of the same plan.
/// Independent mode returns one report per channel, each summing to 100;
/// joint mode returns a single report over 2B bands (left bands first, names
/// suffixed _L/_R) normalized across both channels.
std::vector<IsdReport> stereo_isd(const SubbandSet& left, const SubbandSet& right,
                                  ChannelMode mode);

} // namespace atrous
