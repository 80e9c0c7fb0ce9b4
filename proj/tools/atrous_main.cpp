#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atrous/atrous_core.hpp"
#include "atrous/errors.hpp"
#include "atrous/fft.hpp"
#include "atrous/isd.hpp"
#include "atrous/mallat.hpp"
#include "atrous/mappings.hpp"
#include "atrous/numeric.hpp"
#include "atrous/report.hpp"
#include "atrous/wav_io.hpp"

namespace fs = std::filesystem;
using namespace atrous;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitSampleRate = 4;
constexpr int kExitSilent = 5;

struct MappingOptions {
  std::string mapping = "leipp";
  int stages = 0; // 0 = mapping default (dyadic: 3, audio: 7 sub-octaves)
  int taps = 499;
  bool split12k = false;
};

void add_mapping_options(CLI::App* cmd, MappingOptions& opts) {
  cmd->add_option("--mapping", opts.mapping, "Frequency mapping: dyadic, audio or leipp")
      ->check(CLI::IsMember({"dyadic", "audio", "leipp"}))
      ->capture_default_str();
  cmd->add_option("--stages", opts.stages,
                  "Dyadic stages / audio sub-octaves (0 = mapping default)")
      ->capture_default_str();
  cmd->add_option("--taps", opts.taps, "Filter tap count (odd)")->capture_default_str();
  cmd->add_flag("--split12k", opts.split12k,
                "Audio mapping: split the 8-16 kHz band at 12 kHz");
}

DecompositionPlan build_plan(const MappingOptions& opts, double sample_rate_hz) {
  if (opts.mapping == "dyadic") {
    const int stages = opts.stages > 0 ? opts.stages : 3;
    return dyadic_plan(sample_rate_hz, stages, opts.taps);
  }
  if (opts.mapping == "audio") {
    const int suboctaves = opts.stages > 0 ? opts.stages : kAudioDefaultSuboctaves;
    return audio_plan(sample_rate_hz, suboctaves, opts.taps, opts.split12k);
  }
  return leipp_plan(sample_rate_hz, opts.taps);
}

BitDepth parse_bit_depth(const std::string& s) {
  if (s == "pcm16") return BitDepth::pcm16;
  if (s == "pcm24") return BitDepth::pcm24;
  if (s == "float32") return BitDepth::float32;
  throw std::invalid_argument("unknown bit depth: " + s);
}

Window parse_window_kind(const std::string& s) {
  if (s == "rectangular") return Window::rectangular;
  if (s == "hamming") return Window::hamming;
  if (s == "blackman") return Window::blackman;
  throw std::invalid_argument("unknown window kind: " + s);
}

bool is_silent(const Signal& s) {
  for (const auto& ch : s.channels)
    for (double v : ch)
      if (v != 0.0) return false;
  return true;
}

// Subbands are stored highest band first; the user-facing order (file
// indices, gain lists, CSV rows) is lowest band first.
std::vector<std::size_t> display_order(const SubbandSet& set) {
  std::vector<std::size_t> idx(set.num_bands());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return set.band_labels[a].f_low_hz < set.band_labels[b].f_low_hz;
  });
  return idx;
}

std::string band_file_name(const std::string& stem, std::size_t display_index,
                           const BandLabel& label) {
  return stem + "_band" + std::to_string(display_index) + "_" +
         report::format_g9(label.f_low_hz) + "-" + report::format_g9(label.f_high_hz) + "Hz.wav";
}

double band_energy_all_channels(const Signal& band) {
  double e = 0.0;
  for (const auto& ch : band.channels) e += pairwise_energy(ch.data(), ch.size());
  return e;
}

void warn_if_clipped(const std::string& file, const WavWriteResult& result) {
  if (result.clipped_samples > 0)
    std::cerr << "warning: " << file << ": " << result.clipped_samples
              << " sample(s) clipped at full scale\n";
}

int cmd_decompose(const std::string& input, const MappingOptions& mopts, const std::string& out_dir,
                  const std::string& bit_depth_str, bool dump_filters) {
  auto [signal, meta] = read_wav(input);
  const DecompositionPlan plan = build_plan(mopts, signal.sample_rate_hz);
  const SubbandSet set = decompose(signal, plan);
  const BitDepth depth = parse_bit_depth(bit_depth_str);
  const std::string stem = fs::path(input).stem().string();
  fs::create_directories(out_dir);

  std::vector<report::BandFileEntry> manifest;
  const std::vector<std::size_t> order = display_order(set);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t b = order[k];
    const std::string file = band_file_name(stem, k, set.band_labels[b]);
    const WavWriteResult result = write_wav(fs::path(out_dir) / file, set.band(b), depth);
    warn_if_clipped(file, result);
    manifest.push_back({set.band_labels[b], file, band_energy_all_channels(set.band(b))});
    std::cout << "wrote " << file << '\n';
  }
  report::write_text_atomic(fs::path(out_dir) / (stem + "_bands.csv"),
                            report::bands_manifest_csv(manifest));
  std::cout << "wrote " << stem << "_bands.csv\n";

  if (dump_filters) {
    for (std::size_t s = 0; s < plan.stages.size(); ++s) {
      std::ostringstream os;
      write_filter_csv(os, plan.stages[s].filter);
      const std::string file = stem + "_filter_stage" + std::to_string(s) + ".csv";
      report::write_text_atomic(fs::path(out_dir) / file, os.str());
      std::cout << "wrote " << file << '\n';
    }
  }
  return 0;
}

int cmd_remix(const std::string& input, const MappingOptions& mopts, const std::string& out_dir,
              const std::string& gains_csv, const std::vector<std::string>& mutes,
              const std::string& bit_depth_str) {
  auto [signal, meta] = read_wav(input);
  const DecompositionPlan plan = build_plan(mopts, signal.sample_rate_hz);
  const SubbandSet set = decompose(signal, plan);
  const std::vector<std::size_t> order = display_order(set);

  std::vector<double> gains(set.num_bands(), 1.0);
  if (!gains_csv.empty()) {
    std::vector<double> user;
    std::stringstream ss(gains_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        user.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("--gains: cannot parse '" + item + "'");
      }
    }
    if (user.size() != set.num_bands())
      throw std::invalid_argument("--gains: expected " + std::to_string(set.num_bands()) +
                                  " values (lowest band first), got " + std::to_string(user.size()));
    for (std::size_t k = 0; k < order.size(); ++k) gains[order[k]] = user[k];
  }
  for (const std::string& name : mutes) {
    bool found = false;
    for (std::size_t b = 0; b < set.num_bands(); ++b) {
      if (set.band_labels[b].name == name) {
        gains[b] = 0.0;
        found = true;
      }
    }
    if (!found) {
      std::string known;
      for (std::size_t k : order) known += (known.empty() ? "" : ", ") + set.band_labels[k].name;
      throw std::invalid_argument("--mute: unknown band '" + name + "' (bands: " + known + ")");
    }
  }

  const Signal out = synthesize(set, gains);
  const std::string stem = fs::path(input).stem().string();
  fs::create_directories(out_dir);
  const std::string file = stem + "_remix.wav";
  const WavWriteResult result = write_wav(fs::path(out_dir) / file, out, parse_bit_depth(bit_depth_str));
  warn_if_clipped(file, result);
  std::cout << "wrote " << file << '\n';
  return 0;
}

int cmd_isd(const std::string& input, const MappingOptions& mopts, const std::string& out_dir,
            const std::string& stereo_mode) {
  auto [signal, meta] = read_wav(input);
  if (is_silent(signal)) throw SilentInputError(input + ": input is silent");
  const DecompositionPlan plan = build_plan(mopts, signal.sample_rate_hz);
  const SubbandSet set = decompose(signal, plan);
  const std::string stem = fs::path(input).stem().string();
  fs::create_directories(out_dir);

  auto emit = [&](const IsdReport& rep, const std::string& suffix, const std::string& title) {
    report::write_text_atomic(fs::path(out_dir) / (stem + "_isd" + suffix + ".csv"),
                              report::isd_csv(rep));
    report::write_text_atomic(fs::path(out_dir) / (stem + "_isd" + suffix + ".svg"),
                              report::isd_svg(rep, title));
    std::cout << "wrote " << stem << "_isd" << suffix << ".csv and .svg\n";
  };

  if (signal.num_channels() == 1) {
    emit(isd(set), "", stem + " - energy balance (" + mopts.mapping + ")");
  } else if (stereo_mode == "independent") {
    const SubbandSet left = extract_channel(set, 0);
    const SubbandSet right = extract_channel(set, 1);
    const std::vector<IsdReport> reports =
        stereo_isd(left, right, ChannelMode::stereo_independent);
    emit(reports[0], "_L", stem + " L - energy balance (" + mopts.mapping + ")");
    emit(reports[1], "_R", stem + " R - energy balance (" + mopts.mapping + ")");
  } else {
    const SubbandSet left = extract_channel(set, 0);
    const SubbandSet right = extract_channel(set, 1);
    const std::vector<IsdReport> reports = stereo_isd(left, right, ChannelMode::stereo_joint);
    emit(reports[0], "_stereo", stem + " - joint stereo energy balance (" + mopts.mapping + ")");
  }
  return 0;
}

int cmd_tisd(const std::string& input, const MappingOptions& mopts, const std::string& out_dir,
             const std::string& variant, int window_len, int hop, const std::string& window_kind,
             const std::string& gradient_of) {
  auto [signal, meta] = read_wav(input);
  if (is_silent(signal)) throw SilentInputError(input + ": input is silent");
  const DecompositionPlan plan = build_plan(mopts, signal.sample_rate_hz);
  const SubbandSet set = decompose(signal, plan);
  const std::string stem = fs::path(input).stem().string();
  fs::create_directories(out_dir);

  auto series_for = [&](const SubbandSet& mono) {
    if (variant == "instant") return tisd_instant(mono);
    if (variant == "windowed")
      return tisd_windowed(mono, window_len, hop, parse_window_kind(window_kind));
    if (variant == "cumulative") return tisd_cumulative(mono);
    // gradient
    if (gradient_of == "windowed")
      return tisd_gradient(tisd_windowed(mono, window_len, hop, parse_window_kind(window_kind)));
    return tisd_gradient(tisd_cumulative(mono));
  };

  auto emit = [&](const SubbandSet& mono, const std::string& suffix) {
    const TisdSeries series = series_for(mono);
    const std::string base = stem + "_tisd_" + variant + suffix;
    report::write_text_atomic(fs::path(out_dir) / (base + ".csv"), report::tisd_csv(series));
    report::write_text_atomic(
        fs::path(out_dir) / (base + ".svg"),
        report::tisd_svg(series, stem + suffix + " - " + variant + " energy balance over time"));
    std::cout << "wrote " << base << ".csv and .svg\n";
  };

  if (signal.num_channels() == 1) {
    emit(set, "");
  } else {
    emit(extract_channel(set, 0), "_L");
    emit(extract_channel(set, 1), "_R");
  }
  return 0;
}

int cmd_compare_aliasing(double sample_rate_hz, int taps, const std::string& out_dir) {
  const double nyquist = sample_rate_hz / 2.0;
  const double edge = nyquist / 2.0;       // one dyadic stage splits here
  const double tone_hz = 0.95 * edge;      // 5% below the band edge
  const std::size_t len = static_cast<std::size_t>(4.0 * sample_rate_hz);

  std::vector<double> tone(len);
  for (std::size_t n = 0; n < len; ++n)
    tone[n] = std::sin(2.0 * std::numbers::pi * tone_hz * static_cast<double>(n) / sample_rate_hz);
  const Signal input = Signal::mono(std::move(tone), sample_rate_hz);

  // Decimated route: zero the band above the edge, resynthesize.
  const Signal mallat_out = mallat_resynth_with_zeroed_band(input, QmfPair::haar(), 1, 0);
  // Full-rate route: mute the same band in the remix.
  const DecompositionPlan plan = dyadic_plan(sample_rate_hz, 1, taps);
  const SubbandSet set = decompose(input, plan);
  const std::vector<double> gains = {0.0, 1.0}; // highest band first
  const Signal atrous_out = synthesize(set, gains);

  const double mallat_db = aliasing_metric(input, mallat_out, tone_hz);
  const double atrous_db = aliasing_metric(input, atrous_out, tone_hz);

  fs::create_directories(out_dir);
  report::write_text_atomic(fs::path(out_dir) / "aliasing.csv",
                            report::aliasing_csv(mallat_db, atrous_db));
  write_wav(fs::path(out_dir) / "mallat_zeroed.wav", mallat_out, BitDepth::float32);
  write_wav(fs::path(out_dir) / "atrous_muted.wav", atrous_out, BitDepth::float32);
  std::cout << "tone " << report::format_g9(tone_hz) << " Hz, band edge " << report::format_g9(edge)
            << " Hz\n";
  std::cout << "mallat_zeroed aliasing: " << report::format_g9(mallat_db) << " dB\n";
  std::cout << "atrous_muted aliasing:  " << report::format_g9(atrous_db) << " dB\n";
  std::cout << "wrote aliasing.csv, mallat_zeroed.wav, atrous_muted.wav\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subband audio analysis and resynthesis (modified a trous filter bank)"};
  app.require_subcommand(1);

  std::string input, out_dir = ".";
  MappingOptions mopts;
  std::string bit_depth = "float32";
  bool dump_filters = false;
  std::string gains_csv;
  std::vector<std::string> mutes;
  std::string tisd_variant = "windowed";
  int window_len = kDefaultTisdWindowLen;
  int hop = kDefaultTisdHop;
  std::string window_kind = "rectangular";
  std::string gradient_of = "cumulative";
  std::string stereo_mode = "independent";
  double alias_fs = 48000.0;

  CLI::App* dec = app.add_subcommand("decompose", "Split a WAV into time-aligned subband WAVs");
  dec->add_option("input", input, "Input WAV file")->required();
  add_mapping_options(dec, mopts);
  dec->add_option("--bit-depth", bit_depth, "Subband WAV depth: pcm16, pcm24, float32")
      ->check(CLI::IsMember({"pcm16", "pcm24", "float32"}))
      ->capture_default_str();
  dec->add_flag("--dump-filters", dump_filters, "Also write per-stage filter coefficient CSVs");
  dec->add_option("--out", out_dir, "Output directory")->capture_default_str();

  CLI::App* rem = app.add_subcommand("remix", "Resynthesize a gain-weighted mix of the subbands");
  rem->add_option("input", input, "Input WAV file")->required();
  add_mapping_options(rem, mopts);
  rem->add_option("--gains", gains_csv, "Comma list of per-band gains, lowest band first");
  rem->add_option("--mute", mutes, "Band name to mute (repeatable)");
  rem->add_option("--bit-depth", bit_depth, "Output WAV depth")
      ->check(CLI::IsMember({"pcm16", "pcm24", "float32"}))
      ->capture_default_str();
  rem->add_option("--out", out_dir, "Output directory")->capture_default_str();

  CLI::App* isd_cmd = app.add_subcommand("isd", "Global energy balance (CSV + SVG bar chart)");
  isd_cmd->add_option("input", input, "Input WAV file")->required();
  add_mapping_options(isd_cmd, mopts);
  isd_cmd->add_option("--stereo-mode", stereo_mode,
                      "independent: one balance per channel; joint: one normalizer for both")
      ->check(CLI::IsMember({"independent", "joint"}))
      ->capture_default_str();
  isd_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  CLI::App* tisd_cmd = app.add_subcommand("tisd", "Time-evolving energy balance (CSV + SVG)");
  tisd_cmd->add_option("input", input, "Input WAV file")->required();
  add_mapping_options(tisd_cmd, mopts);
  tisd_cmd->add_option("--tisd-variant", tisd_variant,
                       "instant, windowed, cumulative or gradient")
      ->check(CLI::IsMember({"instant", "windowed", "cumulative", "gradient"}))
      ->capture_default_str();
  tisd_cmd->add_option("--window", window_len, "Window length in samples (windowed variant)")
      ->capture_default_str();
  tisd_cmd->add_option("--hop", hop, "Advancement step in samples")->capture_default_str();
  tisd_cmd->add_option("--window-kind", window_kind, "rectangular, hamming or blackman")
      ->check(CLI::IsMember({"rectangular", "hamming", "blackman"}))
      ->capture_default_str();
  tisd_cmd->add_option("--gradient-of", gradient_of,
                       "Series the gradient differentiates: cumulative or windowed")
      ->check(CLI::IsMember({"cumulative", "windowed"}))
      ->capture_default_str();
  tisd_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();

  CLI::App* cmp = app.add_subcommand(
      "compare-aliasing",
      "Band-edge tone experiment: decimated transform vs full-rate subband remix");
  cmp->add_option("--fs", alias_fs, "Sample rate of the generated tone")->capture_default_str();
  cmp->add_option("--taps", mopts.taps, "Filter tap count for the full-rate route")
      ->capture_default_str();
  cmp->add_option("--out", out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(dec))
      return cmd_decompose(input, mopts, out_dir, bit_depth, dump_filters);
    if (app.got_subcommand(rem))
      return cmd_remix(input, mopts, out_dir, gains_csv, mutes, bit_depth);
    if (app.got_subcommand(isd_cmd)) return cmd_isd(input, mopts, out_dir, stereo_mode);
    if (app.got_subcommand(tisd_cmd))
      return cmd_tisd(input, mopts, out_dir, tisd_variant, window_len, hop, window_kind,
                      gradient_of);
    if (app.got_subcommand(cmp)) return cmd_compare_aliasing(alias_fs, mopts.taps, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const CorruptFileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const UnsupportedSampleRateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSampleRate;
  } catch (const SilentInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSilent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
