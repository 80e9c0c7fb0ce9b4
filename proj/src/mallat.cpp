#include "atrous/mallat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "atrous/fft.hpp"

namespace atrous {

namespace {

// y[k] = sum_n h[n] x[2k+n], x zero-extended; k in [0, ceil(L/2)).
std::vector<double> analyze_decimate(const std::vector<double>& x, const std::vector<double>& h) {
  const std::size_t out_len = (x.size() + 1) / 2;
  std::vector<double> y(out_len, 0.0);
  for (std::size_t k = 0; k < out_len; ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n) {
      const std::size_t idx = 2 * k + n;
      if (idx < x.size()) acc += h[n] * x[idx];
    }
    y[k] = acc;
  }
  return y;
}

// out[m] += sum_k c[k] g[m - 2k].
void upsample_add(const std::vector<double>& c, const std::vector<double>& g,
                  std::vector<double>& out) {
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double v = c[k];
    if (v == 0.0) continue;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const std::size_t m = 2 * k + n;
      if (m < out.size()) out[m] += v * g[n];
    }
  }
}

std::vector<double> synthesize_pair(const std::vector<double>& approx,
                                    const std::vector<double>& detail, const QmfPair& f,
                                    std::size_t out_len) {
  std::vector<double> out(out_len, 0.0);
  upsample_add(approx, f.synthesis_lowpass, out);
  upsample_add(detail, f.synthesis_highpass, out);
  return out;
}

void check_filters(const QmfPair& f) {
  if (f.analysis_lowpass.empty() || f.analysis_highpass.empty() ||
      f.synthesis_lowpass.empty() || f.synthesis_highpass.empty())
    throw std::invalid_argument("mallat: all four filters must be non-empty");
}

} // namespace

QmfPair QmfPair::haar() {
  const double s = 1.0 / std::sqrt(2.0);
  QmfPair pair;
  pair.analysis_lowpass = {s, s};
  pair.analysis_highpass = {s, -s};
  pair.synthesis_lowpass = {s, s};
  pair.synthesis_highpass = {s, -s};
  return pair;
}

std::vector<Signal> mallat_decompose(const Signal& signal, const QmfPair& filters,
                                     int num_stages) {
  validate(signal);
  check_filters(filters);
  if (num_stages < 1)
    throw std::invalid_argument("mallat_decompose: need at least one stage");
  if (signal.length() < (std::size_t{1} << num_stages))
    throw std::invalid_argument("mallat_decompose: signal too short for this many stages");

  const int num_channels = signal.num_channels();
  std::vector<Signal> bands(static_cast<std::size_t>(num_stages) + 1);
  for (int ch = 0; ch < num_channels; ++ch) {
    std::vector<double> a = signal.channels[static_cast<std::size_t>(ch)];
    for (int j = 0; j < num_stages; ++j) {
      std::vector<double> lo = analyze_decimate(a, filters.analysis_lowpass);
      std::vector<double> hi = analyze_decimate(a, filters.analysis_highpass);
      bands[static_cast<std::size_t>(j)].channels.push_back(std::move(hi));
      a = std::move(lo);
    }
    bands[static_cast<std::size_t>(num_stages)].channels.push_back(std::move(a));
  }
  for (int j = 0; j <= num_stages; ++j) {
    const int depth = std::min(j + 1, num_stages);
    bands[static_cast<std::size_t>(j)].sample_rate_hz =
        signal.sample_rate_hz / std::pow(2.0, depth);
  }
  return bands;
}

Signal mallat_resynth_with_zeroed_band(const Signal& signal, const QmfPair& filters,
                                       int num_stages, int band_index) {
  if (band_index < 0 || band_index > num_stages)
    throw std::invalid_argument("mallat_resynth_with_zeroed_band: band index out of range");
  std::vector<Signal> bands = mallat_decompose(signal, filters, num_stages);
  for (auto& ch : bands[static_cast<std::size_t>(band_index)].channels)
    std::fill(ch.begin(), ch.end(), 0.0);

  // Lengths of the approximation at each level, for truncating the upsampled
  // reconstructions back to the pyramid's shape.
  std::vector<std::size_t> level_len(static_cast<std::size_t>(num_stages) + 1);
  level_len[0] = signal.length();
  for (int j = 1; j <= num_stages; ++j)
    level_len[static_cast<std::size_t>(j)] = (level_len[static_cast<std::size_t>(j - 1)] + 1) / 2;

  Signal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  for (int ch = 0; ch < signal.num_channels(); ++ch) {
    std::vector<double> a = bands[static_cast<std::size_t>(num_stages)].channels[static_cast<std::size_t>(ch)];
    for (int j = num_stages; j >= 1; --j) {
      const auto& d = bands[static_cast<std::size_t>(j - 1)].channels[static_cast<std::size_t>(ch)];
      a = synthesize_pair(a, d, filters, level_len[static_cast<std::size_t>(j - 1)]);
    }
    out.channels.push_back(std::move(a));
  }
  return out;
}

double aliasing_metric(const Signal& original, const Signal& modified, double tone_hz) {
  validate(original);
  validate(modified);
  if (original.sample_rate_hz != modified.sample_rate_hz)
    throw std::invalid_argument("aliasing_metric: sample rates differ");
  const double fs = original.sample_rate_hz;
  const double nyquist = fs / 2.0;
  if (!(tone_hz > 0.0) || !(tone_hz < nyquist))
    throw std::invalid_argument("aliasing_metric: tone must lie in (0, Nyquist)");

  // Analyze the common middle section to keep filter edge transients out of
  // the spectra.
  const std::size_t common = std::min(original.length(), modified.length());
  if (common < 64)
    throw std::invalid_argument("aliasing_metric: signals too short");
  const std::size_t skip = common / 8;
  const std::size_t seg_len = common - 2 * skip;

  const double* orig = original.channels.front().data() + skip;
  const double* mod = modified.channels.front().data() + skip;
  const auto orig_spec = fft::windowed_spectrum({orig, seg_len});
  const auto mod_spec = fft::windowed_spectrum({mod, seg_len});

  const double bin_hz = fs / static_cast<double>(orig_spec.fft_size);
  // The exclusion radius is backed off by a sliver so a component sitting
  // exactly 5% of Nyquist away still counts.
  const double radius = 0.05 * nyquist * (1.0 - 1e-9);

  double ref = 0.0;
  double peak = 0.0;
  for (std::size_t k = 0; k < orig_spec.magnitude.size(); ++k) {
    const double f = static_cast<double>(k) * bin_hz;
    bool near_harmonic = false;
    for (double h = tone_hz; h <= nyquist + radius; h += tone_hz) {
      if (std::abs(f - h) < radius) {
        near_harmonic = true;
        break;
      }
    }
    if (std::abs(f - tone_hz) < radius) ref = std::max(ref, orig_spec.magnitude[k]);
    if (!near_harmonic) peak = std::max(peak, mod_spec.magnitude[k]);
  }
  if (ref == 0.0)
    throw std::invalid_argument("aliasing_metric: no tone found near the given frequency");
  if (peak == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(peak / ref);
}

} // namespace atrous
