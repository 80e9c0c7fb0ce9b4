#include "atrous/isd.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "atrous/errors.hpp"
#include "atrous/numeric.hpp"

namespace atrous {

namespace {

void require_mono(const SubbandSet& s, const char* who) {
  if (s.final_approximation.num_channels() != 1)
    throw std::invalid_argument(std::string(who) + ": expected a mono decomposition");
  for (const auto& d : s.details)
    if (d.num_channels() != 1)
      throw std::invalid_argument(std::string(who) + ": expected a mono decomposition");
}

const std::vector<double>& band_samples(const SubbandSet& s, std::size_t b) {
  return s.band(b).channels.front();
}

double sample_or_zero(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : 0.0;
}

std::size_t max_band_length(const SubbandSet& s) {
  std::size_t len = 0;
  for (std::size_t b = 0; b < s.num_bands(); ++b) len = std::max(len, s.band(b).length());
  return len;
}

std::vector<double> band_energies(const SubbandSet& s) {
  std::vector<double> energies(s.num_bands());
  for (std::size_t b = 0; b < s.num_bands(); ++b) {
    const auto& x = band_samples(s, b);
    energies[b] = pairwise_energy(x.data(), x.size());
  }
  return energies;
}

std::vector<double> make_window(Window kind, int len) {
  std::vector<double> w(static_cast<std::size_t>(len));
  const double denom = len > 1 ? static_cast<double>(len - 1) : 1.0;
  for (int i = 0; i < len; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / denom;
    switch (kind) {
      case Window::rectangular: w[static_cast<std::size_t>(i)] = 1.0; break;
      case Window::hamming: w[static_cast<std::size_t>(i)] = 0.54 - 0.46 * std::cos(phase); break;
      case Window::blackman:
        w[static_cast<std::size_t>(i)] = 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
        break;
    }
  }
  return w;
}

} // namespace

IsdReport isd(const SubbandSet& subbands) {
  require_mono(subbands, "isd");
  IsdReport report;
  report.band_labels = subbands.band_labels;
  report.channel_mode = ChannelMode::mono;

  std::vector<double> energies = band_energies(subbands);
  double total = 0.0;
  for (double e : energies) total += e;
  if (total == 0.0)
    throw SilentInputError("isd: all subbands are silent, the energy balance is undefined");

  report.total_energy = total;
  report.weights_percent.resize(energies.size());
  for (std::size_t b = 0; b < energies.size(); ++b)
    report.weights_percent[b] = 100.0 * energies[b] / total;
  return report;
}

TisdSeries tisd_instant(const SubbandSet& subbands) {
  require_mono(subbands, "tisd_instant");
  const std::size_t num_bands = subbands.num_bands();
  const std::size_t len = max_band_length(subbands);
  const double fs = subbands.final_approximation.sample_rate_hz;

  TisdSeries series;
  series.variant = TisdVariant::instant;
  series.band_labels = subbands.band_labels;
  series.times_s.resize(len);
  series.values.assign(num_bands, std::vector<double>(len));

  std::vector<const std::vector<double>*> bands(num_bands);
  for (std::size_t b = 0; b < num_bands; ++b) bands[b] = &band_samples(subbands, b);

  std::vector<double> sq(num_bands);
  for (std::size_t n = 0; n < len; ++n) {
    series.times_s[n] = static_cast<double>(n) / fs;
    double total = 0.0;
    for (std::size_t b = 0; b < num_bands; ++b) {
      const double v = sample_or_zero(*bands[b], n);
      sq[b] = v * v;
      total += sq[b];
    }
    for (std::size_t b = 0; b < num_bands; ++b)
      series.values[b][n] = total == 0.0 ? tisd_gap() : 100.0 * sq[b] / total;
  }
  return series;
}

TisdSeries tisd_windowed(const SubbandSet& subbands, int window_len, int hop,
                         Window window_kind) {
  require_mono(subbands, "tisd_windowed");
  const std::size_t len = max_band_length(subbands);
  if (window_len < 1 || static_cast<std::size_t>(window_len) > len)
    throw std::invalid_argument("tisd_windowed: window must fit inside the subbands");
  if (hop < 1) throw std::invalid_argument("tisd_windowed: hop must be at least 1");

  const std::size_t num_bands = subbands.num_bands();
  const double fs = subbands.final_approximation.sample_rate_hz;
  const std::vector<double> window = make_window(window_kind, window_len);
  const std::size_t num_frames =
      (len - static_cast<std::size_t>(window_len)) / static_cast<std::size_t>(hop) + 1;

  TisdSeries series;
  series.variant = TisdVariant::windowed;
  series.band_labels = subbands.band_labels;
  series.window_len = window_len;
  series.hop = hop;
  series.times_s.resize(num_frames);
  series.values.assign(num_bands, std::vector<double>(num_frames));

  std::vector<double> energy(num_bands);
  for (std::size_t frame = 0; frame < num_frames; ++frame) {
    const std::size_t start = frame * static_cast<std::size_t>(hop);
    series.times_s[frame] =
        (static_cast<double>(start) + static_cast<double>(window_len - 1) / 2.0) / fs;
    double total = 0.0;
    for (std::size_t b = 0; b < num_bands; ++b) {
      const auto& x = band_samples(subbands, b);
      // Samples past the band's end are zero and contribute nothing.
      const std::size_t in_range =
          x.size() > start ? std::min<std::size_t>(static_cast<std::size_t>(window_len),
                                                   x.size() - start)
                           : 0;
      energy[b] = in_range == 0 ? 0.0
                                : pairwise_weighted_energy(x.data() + start, window.data(), in_range);
      total += energy[b];
    }
    for (std::size_t b = 0; b < num_bands; ++b)
      series.values[b][frame] = total == 0.0 ? tisd_gap() : 100.0 * energy[b] / total;
  }
  return series;
}

TisdSeries tisd_cumulative(const SubbandSet& subbands) {
  require_mono(subbands, "tisd_cumulative");
  const std::size_t num_bands = subbands.num_bands();
  const std::size_t len = max_band_length(subbands);
  const double fs = subbands.final_approximation.sample_rate_hz;

  TisdSeries series;
  series.variant = TisdVariant::cumulative;
  series.band_labels = subbands.band_labels;
  series.times_s.resize(len);
  series.values.assign(num_bands, std::vector<double>(len));

  std::vector<const std::vector<double>*> bands(num_bands);
  for (std::size_t b = 0; b < num_bands; ++b) bands[b] = &band_samples(subbands, b);

  std::vector<KahanAccumulator> running(num_bands);
  KahanAccumulator total;
  for (std::size_t n = 0; n < len; ++n) {
    series.times_s[n] = static_cast<double>(n) / fs;
    for (std::size_t b = 0; b < num_bands; ++b) {
      const double v = sample_or_zero(*bands[b], n);
      running[b].add(v * v);
      total.add(v * v);
    }
    for (std::size_t b = 0; b < num_bands; ++b)
      series.values[b][n] = total.sum == 0.0 ? tisd_gap() : 100.0 * running[b].sum / total.sum;
  }
  return series;
}

TisdSeries tisd_gradient(const TisdSeries& series) {
  if (series.variant == TisdVariant::gradient)
    throw std::invalid_argument("tisd_gradient: series is already a gradient");

  TisdSeries out;
  out.variant = TisdVariant::gradient;
  out.band_labels = series.band_labels;
  out.times_s = series.times_s;
  out.window_len = series.window_len;
  out.hop = series.hop;
  out.values.assign(series.values.size(), std::vector<double>(series.num_frames()));

  for (std::size_t b = 0; b < series.values.size(); ++b) {
    const auto& in = series.values[b];
    auto& g = out.values[b];
    double prev = 0.0; // input[-1]
    bool prev_gap = false;
    for (std::size_t n = 0; n < in.size(); ++n) {
      if (is_tisd_gap(in[n]) || prev_gap) {
        g[n] = tisd_gap();
      } else {
        g[n] = in[n] - prev;
      }
      prev_gap = is_tisd_gap(in[n]);
      prev = in[n];
    }
  }
  return out;
}

std::vector<IsdReport> stereo_isd(const SubbandSet& left, const SubbandSet& right,
                                  ChannelMode mode) {
  require_mono(left, "stereo_isd");
  require_mono(right, "stereo_isd");
  if (mode == ChannelMode::mono)
    throw std::invalid_argument("stereo_isd: mode must be stereo_independent or stereo_joint");
  if (left.band_labels.size() != right.band_labels.size() ||
      left.stage_delays != right.stage_delays)
    throw std::invalid_argument("stereo_isd: channels were decomposed with different plans");
  for (std::size_t b = 0; b < left.band_labels.size(); ++b) {
    if (left.band_labels[b].name != right.band_labels[b].name ||
        left.band_labels[b].f_low_hz != right.band_labels[b].f_low_hz ||
        left.band_labels[b].f_high_hz != right.band_labels[b].f_high_hz)
      throw std::invalid_argument("stereo_isd: channels were decomposed with different plans");
  }

  if (mode == ChannelMode::stereo_independent) {
    IsdReport l = isd(left);
    IsdReport r = isd(right);
    l.channel_mode = r.channel_mode = ChannelMode::stereo_independent;
    return {std::move(l), std::move(r)};
  }

  // Joint: one normalizer across all 2B bands.
  std::vector<double> energies = band_energies(left);
  {
    std::vector<double> r = band_energies(right);
    energies.insert(energies.end(), r.begin(), r.end());
  }
  double total = 0.0;
  for (double e : energies) total += e;
  if (total == 0.0)
    throw SilentInputError("stereo_isd: both channels are silent");

  IsdReport joint;
  joint.channel_mode = ChannelMode::stereo_joint;
  joint.total_energy = total;
  joint.weights_percent.resize(energies.size());
  for (std::size_t b = 0; b < energies.size(); ++b)
    joint.weights_percent[b] = 100.0 * energies[b] / total;
  for (const auto& lb : left.band_labels)
    joint.band_labels.push_back({lb.name + "_L", lb.f_low_hz, lb.f_high_hz});
  for (const auto& rb : right.band_labels)
    joint.band_labels.push_back({rb.name + "_R", rb.f_low_hz, rb.f_high_hz});
  return {std::move(joint)};
}

} // namespace atrous
