#include "atrous/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "atrous/errors.hpp"

namespace atrous::report {

namespace {

const char* kPalette[] = {"#4477aa", "#66ccee", "#228833", "#ccbb44", "#ee6677", "#aa3377",
                          "#bbbbbb", "#332288", "#ddaa33", "#999933", "#cc6677", "#117733"};
constexpr std::size_t kPaletteSize = std::size(kPalette);

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Band indices ordered low band first (reports store the highest band first).
std::vector<std::size_t> ascending_order(const std::vector<BandLabel>& labels) {
  std::vector<std::size_t> idx(labels.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return labels[a].f_low_hz < labels[b].f_low_hz;
  });
  return idx;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

} // namespace

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw IoError("write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());
}

std::string isd_csv(const IsdReport& report) {
  std::string out = "band,f_low_hz,f_high_hz,weight_percent\n";
  for (std::size_t i : ascending_order(report.band_labels)) {
    const BandLabel& b = report.band_labels[i];
    out += b.name;
    out += ',';
    out += format_g9(b.f_low_hz);
    out += ',';
    out += format_g9(b.f_high_hz);
    out += ',';
    out += format_g9(report.weights_percent[i]);
    out += '\n';
  }
  return out;
}

std::string tisd_csv(const TisdSeries& series) {
  std::string out;
  if (series.variant == TisdVariant::windowed)
    out += "# time_s is the center of each analysis window\n";
  const std::vector<std::size_t> order = ascending_order(series.band_labels);
  out += "time_s";
  for (std::size_t i : order) {
    out += ',';
    out += series.band_labels[i].name;
  }
  out += '\n';
  for (std::size_t t = 0; t < series.num_frames(); ++t) {
    out += format_g9(series.times_s[t]);
    for (std::size_t i : order) {
      out += ',';
      const double v = series.values[i][t];
      if (!is_tisd_gap(v)) out += format_g9(v);
    }
    out += '\n';
  }
  return out;
}

std::string bands_manifest_csv(const std::vector<BandFileEntry>& entries) {
  std::vector<std::size_t> idx(entries.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].label.f_low_hz < entries[b].label.f_low_hz;
  });
  std::string out = "band,f_low_hz,f_high_hz,file,energy\n";
  for (std::size_t i : idx) {
    const auto& e = entries[i];
    out += e.label.name;
    out += ',';
    out += format_g9(e.label.f_low_hz);
    out += ',';
    out += format_g9(e.label.f_high_hz);
    out += ',';
    out += e.file;
    out += ',';
    out += format_g9(e.energy);
    out += '\n';
  }
  return out;
}

std::string aliasing_csv(double mallat_db, double atrous_db) {
  std::string out = "method,aliasing_db\n";
  out += "mallat_zeroed," + format_g9(mallat_db) + '\n';
  out += "atrous_muted," + format_g9(atrous_db) + '\n';
  return out;
}

std::string isd_svg(const IsdReport& report, const std::string& title) {
  const double width = 960, height = 540;
  const double left = 70, right = 40, top = 56, bottom = 130;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const std::vector<std::size_t> order = ascending_order(report.band_labels);
  const std::size_t num_bands = order.size();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"17\">" << xml_escape(title) << "</text>\n";

  // y grid, fixed 0..100 percent
  for (int g = 0; g <= 100; g += 20) {
    const double y = top + plot_h * (1.0 - g / 100.0);
    svg << "<line x1=\"" << left << "\" y1=\"" << format_g9(y) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << format_g9(y) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << format_g9(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << g << "</text>\n";
  }
  svg << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">energy weight (%)</text>\n";

  // Equal-width bars regardless of the band's span in Hz.
  const double slot = plot_w / static_cast<double>(num_bands);
  for (std::size_t k = 0; k < num_bands; ++k) {
    const std::size_t i = order[k];
    const BandLabel& b = report.band_labels[i];
    const double w = report.weights_percent[i];
    const double bar_w = slot * 0.68;
    const double x = left + slot * (static_cast<double>(k) + 0.16);
    const double h = plot_h * w / 100.0;
    const double y = top + plot_h - h;
    const char* color = kPalette[k % kPaletteSize];
    svg << "<rect x=\"" << format_g9(x) << "\" y=\"" << format_g9(y) << "\" width=\""
        << format_g9(bar_w) << "\" height=\"" << format_g9(h) << "\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << format_g9(x + bar_w / 2) << "\" y=\"" << format_g9(y - 5)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt2(w)
        << "</text>\n";
    const double cx = x + bar_w / 2;
    const double ty = top + plot_h + 14;
    svg << "<text x=\"" << format_g9(cx) << "\" y=\"" << format_g9(ty)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-38 "
        << format_g9(cx) << " " << format_g9(ty) << ")\">" << xml_escape(b.name) << " ["
        << format_g9(b.f_low_hz) << "-" << format_g9(b.f_high_hz) << " Hz]</text>\n";
  }
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"#333333\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string tisd_svg(const TisdSeries& series, const std::string& title) {
  const double width = 960, height = 540;
  const double left = 70, right = 220, top = 56, bottom = 64;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const std::vector<std::size_t> order = ascending_order(series.band_labels);
  const std::size_t num_bands = order.size();
  const std::size_t num_frames = series.num_frames();

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (left + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\" font-size=\"17\">" << xml_escape(title) << "</text>\n";

  if (num_frames == 0 || num_bands == 0) {
    svg << "</svg>\n";
    return svg.str();
  }

  // Display decimation only; the CSV keeps every frame.
  const std::size_t stride = std::max<std::size_t>(1, (num_frames + 799) / 800);
  std::vector<std::size_t> cols;
  for (std::size_t t = 0; t < num_frames; t += stride) cols.push_back(t);
  if (cols.back() != num_frames - 1) cols.push_back(num_frames - 1);

  const double t0 = series.times_s.front();
  const double t1 = series.times_s.back();
  const double t_span = t1 > t0 ? t1 - t0 : 1.0;
  auto x_of = [&](std::size_t t) {
    return left + plot_w * (series.times_s[t] - t0) / t_span;
  };

  const bool gradient = series.variant == TisdVariant::gradient;
  double y_min = 0.0, y_max = 100.0;
  if (gradient) {
    y_min = 0.0;
    y_max = 0.0;
    for (const auto& band : series.values)
      for (double v : band)
        if (!is_tisd_gap(v)) {
          y_min = std::min(y_min, v);
          y_max = std::max(y_max, v);
        }
    if (y_min == y_max) { y_min -= 1.0; y_max += 1.0; }
  }
  auto y_of = [&](double v) { return top + plot_h * (1.0 - (v - y_min) / (y_max - y_min)); };

  // axes
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"#333333\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"#333333\"/>\n";
  for (int g = 0; g <= 4; ++g) {
    const double v = y_min + (y_max - y_min) * g / 4.0;
    const double y = y_of(v);
    svg << "<text x=\"" << left - 8 << "\" y=\"" << format_g9(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt2(v)
        << "</text>\n";
  }
  for (int g = 0; g <= 5; ++g) {
    const double tv = t0 + t_span * g / 5.0;
    const double x = left + plot_w * g / 5.0;
    svg << "<text x=\"" << format_g9(x) << "\" y=\"" << top + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt2(tv)
        << "</text>\n";
  }
  svg << "<text x=\"" << (left + plot_w / 2) << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">time (s)</text>\n";

  if (gradient) {
    // one polyline per band, split at gaps
    for (std::size_t k = 0; k < num_bands; ++k) {
      const std::size_t i = order[k];
      const char* color = kPalette[k % kPaletteSize];
      std::string points;
      auto flush = [&]() {
        if (!points.empty()) {
          svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\""
              << points << "\"/>\n";
          points.clear();
        }
      };
      for (std::size_t c : cols) {
        const double v = series.values[i][c];
        if (is_tisd_gap(v)) {
          flush();
          continue;
        }
        points += format_g9(x_of(c)) + "," + format_g9(y_of(v)) + " ";
      }
      flush();
    }
  } else {
    // stacked areas, low band at the bottom, split at gap columns
    std::vector<double> base(cols.size());
    for (std::size_t k = 0; k < num_bands; ++k) {
      const std::size_t i = order[k];
      const char* color = kPalette[k % kPaletteSize];
      std::string lower_pts, upper_pts;
      std::vector<std::pair<std::string, std::string>> runs;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const double v = series.values[i][cols[c]];
        if (is_tisd_gap(v)) {
          if (!upper_pts.empty()) runs.emplace_back(lower_pts, upper_pts);
          lower_pts.clear();
          upper_pts.clear();
          continue;
        }
        const double lo = base[c];
        const double hi = lo + v;
        lower_pts += format_g9(x_of(cols[c])) + "," + format_g9(y_of(lo)) + " ";
        upper_pts = format_g9(x_of(cols[c])) + "," + format_g9(y_of(hi)) + " " + upper_pts;
        base[c] = hi;
      }
      if (!upper_pts.empty()) runs.emplace_back(lower_pts, upper_pts);
      for (const auto& [lower, upper] : runs)
        svg << "<polygon fill=\"" << color << "\" stroke=\"none\" points=\"" << lower << upper
            << "\"/>\n";
    }
  }

  // legend: highest band on top, matching the stack
  for (std::size_t k = 0; k < num_bands; ++k) {
    const std::size_t row = num_bands - 1 - k; // draw ascending list bottom-up
    const double ly = top + 10 + 18.0 * static_cast<double>(row);
    const std::size_t i = order[k];
    const char* color = kPalette[k % kPaletteSize];
    svg << "<rect x=\"" << left + plot_w + 16 << "\" y=\"" << format_g9(ly - 9)
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << left + plot_w + 34 << "\" y=\"" << format_g9(ly + 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(series.band_labels[i].name)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace atrous::report
