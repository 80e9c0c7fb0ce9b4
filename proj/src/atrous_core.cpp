#include "atrous/atrous_core.hpp"

#include <algorithm>
#include <stdexcept>

#include "atrous/fft.hpp"

namespace atrous {

namespace {

struct ChannelPair {
  std::vector<double> approx;
  std::vector<double> detail;
};

ChannelPair stage_channel(const std::vector<double>& x, const FirFilter& f) {
  const std::size_t tau = static_cast<std::size_t>(group_delay(f));
  std::vector<double> full = fft::convolve(x, f.coefficients);

  ChannelPair out;
  out.approx.assign(full.begin() + static_cast<std::ptrdiff_t>(tau), full.end());
  const std::size_t n = out.approx.size(); // == x.size() + tau
  out.detail.resize(n);
  for (std::size_t i = 0; i < x.size(); ++i) out.detail[i] = x[i] - out.approx[i];
  for (std::size_t i = x.size(); i < n; ++i) out.detail[i] = -out.approx[i];
  return out;
}

} // namespace

std::pair<Signal, Signal> decompose_stage(const Signal& approx, const FirFilter& stage_filter) {
  validate(approx);
  validate(stage_filter);
  if (approx.length() == 0)
    throw std::invalid_argument("decompose_stage: empty signal");

  Signal new_approx, detail;
  new_approx.sample_rate_hz = detail.sample_rate_hz = approx.sample_rate_hz;
  for (const auto& ch : approx.channels) {
    ChannelPair pair = stage_channel(ch, stage_filter);
    new_approx.channels.push_back(std::move(pair.approx));
    detail.channels.push_back(std::move(pair.detail));
  }
  return {std::move(new_approx), std::move(detail)};
}

SubbandSet decompose(const Signal& signal, const DecompositionPlan& plan) {
  validate(signal);
  validate(plan);
  if (signal.length() == 0)
    throw std::invalid_argument("decompose: empty signal");
  if (signal.sample_rate_hz != plan.sample_rate_hz)
    throw std::invalid_argument("decompose: plan sample rate does not match the signal");

  const std::size_t num_stages = plan.stages.size();
  const int num_channels = signal.num_channels();

  // Labeled terminal outputs, per channel, then assembled into Signals.
  struct Terminal {
    BandLabel label;
    std::vector<std::vector<double>> channels;
  };
  std::vector<Terminal> terminals;
  for (const auto& st : plan.stages) {
    if (st.detail_label) terminals.push_back({*st.detail_label, {}});
    if (st.approx_label) terminals.push_back({*st.approx_label, {}});
  }

  for (int ch = 0; ch < num_channels; ++ch) {
    std::vector<ChannelPair> outs(num_stages);
    std::size_t terminal_index = 0;
    for (std::size_t s = 0; s < num_stages; ++s) {
      const PlanStage& st = plan.stages[s];
      const std::vector<double>& src =
          st.source_stage < 0
              ? signal.channels[static_cast<std::size_t>(ch)]
              : (st.source_is_detail ? outs[static_cast<std::size_t>(st.source_stage)].detail
                                     : outs[static_cast<std::size_t>(st.source_stage)].approx);
      outs[s] = stage_channel(src, st.filter);
      if (st.detail_label) terminals[terminal_index++].channels.push_back(outs[s].detail);
      if (st.approx_label) terminals[terminal_index++].channels.push_back(outs[s].approx);
    }
  }

  // Highest band first; validate(plan) guarantees distinct edges and exactly
  // one band starting at 0 Hz.
  std::sort(terminals.begin(), terminals.end(), [](const Terminal& a, const Terminal& b) {
    return a.label.f_low_hz > b.label.f_low_hz;
  });

  SubbandSet set;
  set.original_length = signal.length();
  for (auto& t : terminals) {
    Signal s{std::move(t.channels), signal.sample_rate_hz};
    if (&t == &terminals.back()) {
      set.final_approximation = std::move(s);
    } else {
      set.details.push_back(std::move(s));
    }
    set.band_labels.push_back(std::move(t.label));
  }
  for (const auto& st : plan.stages) set.stage_delays.push_back(group_delay(st.filter));
  return set;
}

Signal synthesize(const SubbandSet& subbands, std::span<const double> gains) {
  const std::size_t num_bands = subbands.num_bands();
  if (gains.size() != num_bands)
    throw std::invalid_argument("synthesize: one gain per band required");
  for (double g : gains)
    if (!std::isfinite(g))
      throw std::invalid_argument("synthesize: gains must be finite");
  if (subbands.final_approximation.num_channels() == 0)
    throw std::invalid_argument("synthesize: empty subband set");

  const int num_channels = subbands.final_approximation.num_channels();
  std::size_t max_len = 0;
  for (std::size_t b = 0; b < num_bands; ++b) max_len = std::max(max_len, subbands.band(b).length());

  Signal out;
  out.sample_rate_hz = subbands.final_approximation.sample_rate_hz;
  for (int ch = 0; ch < num_channels; ++ch) {
    std::vector<double> acc(max_len, 0.0);
    for (std::size_t b = 0; b < num_bands; ++b) {
      const double g = gains[b];
      if (g == 0.0) continue;
      const auto& samples = subbands.band(b).channels[static_cast<std::size_t>(ch)];
      for (std::size_t i = 0; i < samples.size(); ++i) acc[i] += g * samples[i];
    }
    acc.resize(subbands.original_length);
    out.channels.push_back(std::move(acc));
  }
  return out;
}

Signal apply_fir(const Signal& signal, const FirFilter& filter) {
  validate(signal);
  if (signal.length() == 0)
    throw std::invalid_argument("apply_fir: empty signal");
  const int n = filter.num_taps();
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("apply_fir: filter needs an odd tap count");
  const std::size_t tau = static_cast<std::size_t>((n - 1) / 2);

  Signal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  for (const auto& ch : signal.channels) {
    std::vector<double> full = fft::convolve(ch, filter.coefficients);
    out.channels.emplace_back(full.begin() + static_cast<std::ptrdiff_t>(tau), full.end());
  }
  return out;
}

SubbandSet extract_channel(const SubbandSet& subbands, int channel) {
  SubbandSet out;
  out.band_labels = subbands.band_labels;
  out.stage_delays = subbands.stage_delays;
  out.original_length = subbands.original_length;
  for (const auto& d : subbands.details) out.details.push_back(extract_channel(d, channel));
  out.final_approximation = extract_channel(subbands.final_approximation, channel);
  return out;
}

} // namespace atrous
