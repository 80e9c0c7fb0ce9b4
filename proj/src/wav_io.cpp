#include "atrous/wav_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "atrous/errors.hpp"

namespace atrous {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(static_cast<std::uint16_t>(p[0]) |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

} // namespace

std::pair<Signal, WavMeta> read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw CorruptFileError(path.string() + ": not a RIFF/WAVE file");

  FmtChunk fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size())
      throw CorruptFileError(path.string() + ": truncated chunk");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw CorruptFileError(path.string() + ": fmt chunk too small");
      fmt.format = read_u16(bytes.data() + body);
      fmt.channels = read_u16(bytes.data() + body + 2);
      fmt.sample_rate = read_u32(bytes.data() + body + 4);
      fmt.bits_per_sample = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size % 2); // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr)
    throw CorruptFileError(path.string() + ": missing fmt or data chunk");
  if (fmt.channels < 1 || fmt.channels > 2)
    throw UnsupportedFormatError(path.string() + ": only mono and stereo are supported");
  if (fmt.sample_rate == 0)
    throw CorruptFileError(path.string() + ": zero sample rate");

  BitDepth depth;
  std::size_t bytes_per_sample;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    depth = BitDepth::pcm16;
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatPcm && fmt.bits_per_sample == 24) {
    depth = BitDepth::pcm24;
    bytes_per_sample = 3;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    depth = BitDepth::float32;
    bytes_per_sample = 4;
  } else {
    throw UnsupportedFormatError(path.string() + ": unsupported codec (PCM 16/24 or float 32 only)");
  }

  const std::size_t frame_size = bytes_per_sample * fmt.channels;
  if (data_size % frame_size != 0)
    throw CorruptFileError(path.string() + ": data chunk is not a whole number of frames");
  const std::size_t num_frames = data_size / frame_size;

  Signal signal;
  signal.sample_rate_hz = static_cast<double>(fmt.sample_rate);
  signal.channels.assign(fmt.channels, std::vector<double>(num_frames));
  for (std::size_t i = 0; i < num_frames; ++i) {
    for (int ch = 0; ch < fmt.channels; ++ch) {
      const unsigned char* p = data + (i * fmt.channels + static_cast<std::size_t>(ch)) * bytes_per_sample;
      double v = 0.0;
      switch (depth) {
        case BitDepth::pcm16: {
          const auto raw = static_cast<std::int16_t>(read_u16(p));
          v = static_cast<double>(raw) / 32768.0;
          break;
        }
        case BitDepth::pcm24: {
          std::int32_t raw = static_cast<std::int32_t>(p[0]) | (static_cast<std::int32_t>(p[1]) << 8) |
                             (static_cast<std::int32_t>(p[2]) << 16);
          if (raw & 0x800000) raw -= 0x1000000; // sign-extend
          v = static_cast<double>(raw) / 8388608.0;
          break;
        }
        case BitDepth::float32: {
          std::uint32_t raw = read_u32(p);
          float f;
          std::memcpy(&f, &raw, sizeof(f));
          v = static_cast<double>(f);
          break;
        }
      }
      signal.channels[static_cast<std::size_t>(ch)][i] = v;
    }
  }

  WavMeta meta{signal.sample_rate_hz, depth, fmt.channels, num_frames};
  return {std::move(signal), meta};
}

WavWriteResult write_wav(const std::filesystem::path& path, const Signal& signal,
                         BitDepth bit_depth) {
  validate(signal);
  const int channels = signal.num_channels();
  const std::size_t num_frames = signal.length();

  std::uint16_t format;
  std::uint16_t bits;
  switch (bit_depth) {
    case BitDepth::pcm16: format = kFormatPcm; bits = 16; break;
    case BitDepth::pcm24: format = kFormatPcm; bits = 24; break;
    case BitDepth::float32: format = kFormatIeeeFloat; bits = 32; break;
    default: throw std::invalid_argument("write_wav: unknown bit depth");
  }
  const std::size_t bytes_per_sample = bits / 8u;
  const std::size_t data_size = num_frames * static_cast<std::size_t>(channels) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_size + (data_size % 2)));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate_hz));
  const std::uint32_t byte_rate =
      static_cast<std::uint32_t>(signal.sample_rate_hz) * static_cast<std::uint32_t>(channels) *
      static_cast<std::uint32_t>(bytes_per_sample);
  put_u32(out, byte_rate);
  put_u16(out, static_cast<std::uint16_t>(static_cast<std::size_t>(channels) * bytes_per_sample));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));

  std::size_t clipped = 0;
  for (std::size_t i = 0; i < num_frames; ++i) {
    for (int ch = 0; ch < channels; ++ch) {
      const double v = signal.channels[static_cast<std::size_t>(ch)][i];
      switch (bit_depth) {
        case BitDepth::pcm16: {
          double scaled = std::nearbyint(v * 32768.0);
          if (scaled > 32767.0) { scaled = 32767.0; ++clipped; }
          if (scaled < -32768.0) { scaled = -32768.0; ++clipped; }
          put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
          break;
        }
        case BitDepth::pcm24: {
          double scaled = std::nearbyint(v * 8388608.0);
          if (scaled > 8388607.0) { scaled = 8388607.0; ++clipped; }
          if (scaled < -8388608.0) { scaled = -8388608.0; ++clipped; }
          const auto raw = static_cast<std::int32_t>(scaled);
          out.push_back(static_cast<unsigned char>(raw & 0xff));
          out.push_back(static_cast<unsigned char>((raw >> 8) & 0xff));
          out.push_back(static_cast<unsigned char>((raw >> 16) & 0xff));
          break;
        }
        case BitDepth::float32: {
          const auto f = static_cast<float>(v);
          std::uint32_t raw;
          std::memcpy(&raw, &f, sizeof(raw));
          put_u32(out, raw);
          break;
        }
      }
    }
  }
  if (data_size % 2 != 0) out.push_back(0); // RIFF pad byte

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!os) throw IoError("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());

  WavWriteResult result;
  result.meta = WavMeta{signal.sample_rate_hz, bit_depth, channels, num_frames};
  result.clipped_samples = clipped;
  return result;
}

} // namespace atrous
