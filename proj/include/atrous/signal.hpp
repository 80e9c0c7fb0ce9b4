#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace atrous {

/// Sampled audio, planar layout, one or two channels. Samples are full-scale
/// normalized doubles; DC content is meaningful and never removed.
struct Signal {
  std::vector<std::vector<double>> channels;
  double sample_rate_hz = 0.0;

  Signal() = default;
  Signal(std::vector<std::vector<double>> ch, double fs)
      : channels(std::move(ch)), sample_rate_hz(fs) {}

  static Signal mono(std::vector<double> samples, double fs) {
    Signal s;
    s.channels.push_back(std::move(samples));
    s.sample_rate_hz = fs;
    return s;
  }

  int num_channels() const { return static_cast<int>(channels.size()); }

  std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Throws std::invalid_argument unless the signal satisfies its invariants:
/// positive sample rate, 1 or 2 equal-length channels, all values finite.
inline void validate(const Signal& s) {
  if (s.sample_rate_hz <= 0.0)
    throw std::invalid_argument("signal: sample rate must be positive");
  if (s.channels.empty() || s.channels.size() > 2)
    throw std::invalid_argument("signal: expected 1 or 2 channels");
  const std::size_t len = s.channels.front().size();
  for (const auto& ch : s.channels) {
    if (ch.size() != len)
      throw std::invalid_argument("signal: channels must have equal length");
    for (double v : ch)
      if (!std::isfinite(v))
        throw std::invalid_argument("signal: samples must be finite");
  }
}

inline Signal extract_channel(const Signal& s, int channel) {
  if (channel < 0 || channel >= s.num_channels())
    throw std::invalid_argument("signal: channel index out of range");
  return Signal::mono(s.channels[static_cast<std::size_t>(channel)], s.sample_rate_hz);
}

} // namespace atrous
