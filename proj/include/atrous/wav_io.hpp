#pragma once

#include <cstddef>
#include <filesystem>
#include <utility>

#include "atrous/signal.hpp"

namespace atrous {

enum class BitDepth { pcm16, pcm24, float32 };

struct WavMeta {
  double sample_rate_hz = 0.0;
  BitDepth bit_depth = BitDepth::float32;
  int channels = 0;
  std::size_t num_frames = 0;
};

/// Reads a canonical RIFF/WAVE file: PCM 16/24-bit or IEEE float 32-bit,
/// 1 or 2 channels. Integer samples scale to [-1, 1) by 2^(bits-1); float
/// passes through. DC content is preserved untouched.
std::pair<Signal, WavMeta> read_wav(const std::filesystem::path& path);

struct WavWriteResult {
  WavMeta meta;
  std::size_t clipped_samples = 0;
};

/// Writes a little-endian canonical-fmt WAV atomically (temp + rename).
/// float32 passes samples through; integer depths round to nearest and clip
/// at full scale, reporting the clipped-sample count.
WavWriteResult write_wav(const std::filesystem::path& path, const Signal& signal,
                         BitDepth bit_depth);

} // namespace atrous
