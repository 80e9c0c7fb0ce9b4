#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "atrous/isd.hpp"

namespace atrous::report {

/// Fixed 9-significant-digit float formatting; every CSV/SVG number goes
/// through here so repeated runs emit byte-identical files.
std::string format_g9(double v);

/// Writes via a temp file in the same directory, then renames.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

/// `band,f_low_hz,f_high_hz,weight_percent`, rows ordered low band first.
std::string isd_csv(const IsdReport& report);

/// `time_s` column then one column per band (low band first); gap cells are
/// empty. Windowed series get a leading comment pinning the time convention.
std::string tisd_csv(const TisdSeries& series);

/// Decompose manifest: `band,f_low_hz,f_high_hz,file,energy`, low band first.
struct BandFileEntry {
  BandLabel label;
  std::string file;
  double energy = 0.0;
};
std::string bands_manifest_csv(const std::vector<BandFileEntry>& entries);

/// Two metric rows: mallat_zeroed and atrous_muted.
std::string aliasing_csv(double mallat_db, double atrous_db);

/// Equal-width bar chart of an ISD report (bar heights on a fixed 0-100
/// scale, bands labeled with names and edge frequencies).
std::string isd_svg(const IsdReport& report, const std::string& title);

/// Band-colored chart of a TISD series: stacked areas for the percent
/// variants, one line per band for the gradient. The time axis is decimated
/// for display; CSV output keeps the full rate.
std::string tisd_svg(const TisdSeries& series, const std::string& title);

} // namespace atrous::report
