#include <doctest.h>

#include <cmath>
#include <sstream>

#include "atrous/filter_design.hpp"
#include "atrous/fft.hpp"
#include "test_helpers.hpp"

using namespace atrous;
namespace th = testing_helpers;

TEST_CASE("design_lowpass basic invariants") {
  const FirFilter f = design_lowpass(8000.0, 48000.0, 499, Window::blackman);
  CHECK(f.num_taps() == 499);
  CHECK(f.nominal_cutoff_hz == 8000.0);

  double sum = 0.0;
  for (double c : f.coefficients) sum += c;
  CHECK(std::abs(sum - 1.0) <= 1e-12);

  for (int i = 0; i < 499; ++i)
    CHECK(f.coefficients[static_cast<std::size_t>(i)] ==
          f.coefficients[static_cast<std::size_t>(498 - i)]);

  CHECK_NOTHROW(validate(f));
}

TEST_CASE("design_lowpass frequency response") {
  const FirFilter f = design_lowpass(8000.0, 48000.0, 499, Window::blackman);

  // unit gain at DC
  CHECK(amplitude_response(f, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // about -6 dB at the cutoff when the transition band is narrow relative to
  // the cutoff (holds down to roughly 400 Hz at this tap count and rate)
  for (double fc : {1000.0, 3000.0, 8000.0, 16000.0}) {
    const FirFilter g = design_lowpass(fc, 48000.0, 499, Window::blackman);
    const double db = 20.0 * std::log10(std::abs(amplitude_response(g, fc)));
    CHECK(std::abs(db - (-6.02)) <= 1.0);
  }

  // Blackman stopband: below -60 dB at Nyquist for 101+ taps
  for (int taps : {101, 499}) {
    const FirFilter g = design_lowpass(8000.0, 48000.0, taps, Window::blackman);
    const double db = 20.0 * std::log10(std::abs(amplitude_response(g, 24000.0)) + 1e-300);
    CHECK(db < -60.0);
  }
}

TEST_CASE("design_lowpass rejects bad arguments") {
  CHECK_THROWS_AS(design_lowpass(8000.0, 48000.0, 500), std::invalid_argument);
  CHECK_THROWS_AS(design_lowpass(8000.0, 48000.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(design_lowpass(0.0, 48000.0, 499), std::invalid_argument);
  CHECK_THROWS_AS(design_lowpass(24000.0, 48000.0, 499), std::invalid_argument);
  CHECK_THROWS_AS(design_lowpass(-10.0, 48000.0, 499), std::invalid_argument);
}

TEST_CASE("oversample_filter inserts zeros between taps") {
  FirFilter tap1{{1.0}, 1000.0, 48000.0};
  const FirFilter tap1_ov = oversample_filter(tap1);
  CHECK(tap1_ov.coefficients == std::vector<double>{1.0});
  CHECK(tap1_ov.nominal_cutoff_hz == 500.0);

  FirFilter tri{{0.25, 0.5, 0.25}, 12000.0, 48000.0};
  const FirFilter tri_ov = oversample_filter(tri);
  CHECK(tri_ov.coefficients == std::vector<double>{0.25, 0.0, 0.5, 0.0, 0.25});

  FirFilter base = design_lowpass(8000.0, 48000.0, 499);
  const FirFilter once = oversample_filter(base);
  const FirFilter twice = oversample_filter(once);
  CHECK(once.num_taps() == 997);
  CHECK(twice.num_taps() == 1993);
}

TEST_CASE("oversampling preserves oddness and symmetry, doubles group delay") {
  for (int taps : {3, 15, 101, 499}) {
    const FirFilter f = design_lowpass(6000.0, 48000.0, taps);
    const FirFilter g = oversample_filter(f);
    CHECK(g.num_taps() % 2 == 1);
    CHECK_NOTHROW(validate(g));
    CHECK(group_delay(g) == 2 * group_delay(f));
  }
}

TEST_CASE("group_delay is (N-1)/2") {
  CHECK(group_delay(design_lowpass(8000.0, 48000.0, 499)) == 249);
  CHECK(group_delay(FirFilter{{1.0}, 0.0, 48000.0}) == 0);
  CHECK(group_delay(oversample_filter(design_lowpass(8000.0, 48000.0, 499))) == 498);
}

TEST_CASE("unit DC gain reproduces a constant in steady state") {
  const FirFilter f = design_lowpass(2000.0, 48000.0, 301);
  std::vector<double> x(2000, 0.73);
  const auto y = fft::convolve(x, f.coefficients);
  // steady-state region: away from both transients
  for (std::size_t i = 400; i < 1800; ++i) CHECK(std::abs(y[i] - 0.73) <= 1e-10);
}

TEST_CASE("filter CSV dump") {
  const FirFilter f = design_lowpass(8000.0, 48000.0, 5, Window::rectangular);
  std::ostringstream os;
  write_filter_csv(os, f);
  const std::string text = os.str();
  CHECK(text.rfind("# taps=5 cutoff_hz=8000 fs=48000\n", 0) == 0);
  // header + one line per coefficient
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 6);
}
