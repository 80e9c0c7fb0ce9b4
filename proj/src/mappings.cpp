#include "atrous/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "atrous/errors.hpp"

namespace atrous {

namespace {

std::vector<BandLabel> collect_labels(const DecompositionPlan& plan) {
  std::vector<BandLabel> labels;
  for (const auto& st : plan.stages) {
    if (st.detail_label) labels.push_back(*st.detail_label);
    if (st.approx_label) labels.push_back(*st.approx_label);
  }
  std::sort(labels.begin(), labels.end(),
            [](const BandLabel& a, const BandLabel& b) { return a.f_low_hz > b.f_low_hz; });
  return labels;
}

} // namespace

std::size_t DecompositionPlan::num_bands() const { return band_labels().size(); }

std::vector<BandLabel> DecompositionPlan::band_labels() const { return collect_labels(*this); }

void validate(const DecompositionPlan& plan) {
  if (plan.sample_rate_hz <= 0.0)
    throw std::invalid_argument("plan: sample rate must be positive");
  if (plan.stages.empty())
    throw std::invalid_argument("plan: at least one stage required");

  const int num_stages = static_cast<int>(plan.stages.size());
  std::vector<int> approx_consumers(plan.stages.size(), 0);
  std::vector<int> detail_consumers(plan.stages.size(), 0);
  int input_consumers = 0;

  for (int s = 0; s < num_stages; ++s) {
    const PlanStage& st = plan.stages[static_cast<std::size_t>(s)];
    validate(st.filter);
    if (st.source_stage >= s)
      throw std::invalid_argument("plan: stage source must precede the stage");
    if (st.source_stage < 0) {
      ++input_consumers;
    } else if (st.source_is_detail) {
      ++detail_consumers[static_cast<std::size_t>(st.source_stage)];
    } else {
      ++approx_consumers[static_cast<std::size_t>(st.source_stage)];
      // Refining an approximation must narrow it.
      const auto& src = plan.stages[static_cast<std::size_t>(st.source_stage)];
      if (!(st.filter.nominal_cutoff_hz < src.filter.nominal_cutoff_hz))
        throw std::invalid_argument("plan: cutoffs must strictly decrease along approximation chains");
    }
  }
  if (input_consumers != 1)
    throw std::invalid_argument("plan: exactly one stage must consume the input signal");

  for (int s = 0; s < num_stages; ++s) {
    const PlanStage& st = plan.stages[static_cast<std::size_t>(s)];
    const bool approx_used = approx_consumers[static_cast<std::size_t>(s)] > 0;
    const bool detail_used = detail_consumers[static_cast<std::size_t>(s)] > 0;
    if (approx_consumers[static_cast<std::size_t>(s)] > 1 ||
        detail_consumers[static_cast<std::size_t>(s)] > 1)
      throw std::invalid_argument("plan: each stage output may be consumed at most once");
    if (approx_used == st.approx_label.has_value())
      throw std::invalid_argument("plan: stage approximation must be either consumed or labeled");
    if (detail_used == st.detail_label.has_value())
      throw std::invalid_argument("plan: stage detail must be either consumed or labeled");
  }

  // Labels must tile (0, Nyquist].
  std::vector<BandLabel> labels = collect_labels(plan);
  std::reverse(labels.begin(), labels.end()); // ascending
  const double nyquist = plan.sample_rate_hz / 2.0;
  const double tol = 1e-9 * plan.sample_rate_hz;
  if (labels.empty() || std::abs(labels.front().f_low_hz) > tol)
    throw std::invalid_argument("plan: lowest band must start at 0 Hz");
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    if (std::abs(labels[i].f_high_hz - labels[i + 1].f_low_hz) > tol)
      throw std::invalid_argument("plan: band labels must tile without gaps or overlaps");
  }
  if (std::abs(labels.back().f_high_hz - nyquist) > tol)
    throw std::invalid_argument("plan: highest band must end at Nyquist");
}

DecompositionPlan dyadic_plan(double sample_rate_hz, int num_stages, int base_taps) {
  if (sample_rate_hz <= 0.0)
    throw std::invalid_argument("dyadic_plan: sample rate must be positive");
  if (num_stages < 1)
    throw std::invalid_argument("dyadic_plan: need at least one stage");
  const double nyquist = sample_rate_hz / 2.0;
  if (nyquist / std::pow(2.0, num_stages) < 1.0)
    throw std::invalid_argument("dyadic_plan: too many stages for this sample rate");

  DecompositionPlan plan;
  plan.mapping_kind = MappingKind::dyadic;
  plan.sample_rate_hz = sample_rate_hz;

  FirFilter filter = design_lowpass(nyquist / 2.0, sample_rate_hz, base_taps);
  double upper = nyquist;
  for (int j = 0; j < num_stages; ++j) {
    const double cut = filter.nominal_cutoff_hz;
    PlanStage st;
    st.filter = filter;
    st.source_stage = j - 1;
    st.detail_label = BandLabel{band_range_name(cut, upper), cut, upper};
    if (j == num_stages - 1)
      st.approx_label = BandLabel{band_range_name(0.0, cut), 0.0, cut};
    plan.stages.push_back(std::move(st));
    upper = cut;
    if (j + 1 < num_stages) filter = oversample_filter(filter);
  }
  validate(plan);
  return plan;
}

DecompositionPlan audio_plan(double sample_rate_hz, int num_suboctaves, int base_taps,
                             bool split_8_16_at_12k) {
  if (sample_rate_hz <= 32000.0)
    throw UnsupportedSampleRateError(
        "audio mapping requires a sample rate above 32 kHz (16 kHz split unrealizable)");
  if (num_suboctaves < 1)
    throw std::invalid_argument("audio_plan: need at least one sub-octave");
  const double nyquist = sample_rate_hz / 2.0;

  DecompositionPlan plan;
  plan.mapping_kind = MappingKind::audio;
  plan.sample_rate_hz = sample_rate_hz;

  // Stage 0: 8 kHz split of the full-band input; both outputs are consumed.
  PlanStage first;
  first.filter = design_lowpass(8000.0, sample_rate_hz, base_taps);
  first.source_stage = -1;
  plan.stages.push_back(first);

  // Split the 8 kHz-Nyquist detail at 16 kHz.
  PlanStage hi;
  hi.filter = design_lowpass(16000.0, sample_rate_hz, base_taps);
  hi.source_stage = 0;
  hi.source_is_detail = true;
  hi.detail_label = BandLabel{band_range_name(16000.0, nyquist), 16000.0, nyquist};
  if (!split_8_16_at_12k)
    hi.approx_label = BandLabel{band_range_name(8000.0, 16000.0), 8000.0, 16000.0};
  plan.stages.push_back(hi);

  if (split_8_16_at_12k) {
    PlanStage mid;
    mid.filter = design_lowpass(12000.0, sample_rate_hz, base_taps);
    mid.source_stage = 1;
    mid.source_is_detail = false;
    mid.detail_label = BandLabel{band_range_name(12000.0, 16000.0), 12000.0, 16000.0};
    mid.approx_label = BandLabel{band_range_name(8000.0, 12000.0), 8000.0, 12000.0};
    plan.stages.push_back(mid);
  }

  // Octave chain on the 0-8 kHz approximation by iterated dilation of the
  // 8 kHz filter.
  FirFilter oct = oversample_filter(plan.stages.front().filter);
  int source = 0;
  double upper = 8000.0;
  for (int j = 0; j < num_suboctaves; ++j) {
    const double cut = oct.nominal_cutoff_hz;
    PlanStage st;
    st.filter = oct;
    st.source_stage = source;
    st.detail_label = BandLabel{band_range_name(cut, upper), cut, upper};
    if (j == num_suboctaves - 1)
      st.approx_label = BandLabel{band_range_name(0.0, cut), 0.0, cut};
    source = static_cast<int>(plan.stages.size());
    plan.stages.push_back(std::move(st));
    upper = cut;
    if (j + 1 < num_suboctaves) oct = oversample_filter(oct);
  }
  validate(plan);
  return plan;
}

DecompositionPlan leipp_plan(double sample_rate_hz, int taps) {
  const double nyquist = sample_rate_hz / 2.0;
  if (nyquist <= 16000.0)
    throw UnsupportedSampleRateError("Leipp mapping requires Nyquist above 16 kHz");

  static const double kEdges[] = {50.0,   200.0,  400.0,  800.0, 1200.0,
                                  1800.0, 3000.0, 6000.0, 16000.0};
  static const char* kNames[] = {"low-bass", "bass",        "low",      "low-medium",
                                 "medium",   "high-medium", "high",     "over-high",
                                 "stridence", "high-stridence"};

  DecompositionPlan plan;
  plan.mapping_kind = MappingKind::leipp;
  plan.sample_rate_hz = sample_rate_hz;

  const int num_cuts = static_cast<int>(std::size(kEdges));
  double upper = nyquist;
  for (int s = 0; s < num_cuts; ++s) {
    const double cut = kEdges[static_cast<std::size_t>(num_cuts - 1 - s)]; // descending
    PlanStage st;
    st.filter = design_lowpass(cut, sample_rate_hz, taps);
    st.source_stage = s - 1;
    st.detail_label = BandLabel{kNames[num_cuts - s], cut, upper};
    if (s == num_cuts - 1) st.approx_label = BandLabel{kNames[0], 0.0, cut};
    plan.stages.push_back(std::move(st));
    upper = cut;
  }
  validate(plan);
  return plan;
}

std::vector<double> band_edges(const DecompositionPlan& plan) {
  std::vector<BandLabel> labels = plan.band_labels();
  std::vector<double> edges;
  edges.reserve(labels.size() + 1);
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) edges.push_back(it->f_low_hz);
  edges.push_back(labels.front().f_high_hz);
  return edges;
}

std::string band_range_name(double f_low_hz, double f_high_hz) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g-%.9gHz", f_low_hz, f_high_hz);
  return buf;
}

} // namespace atrous
