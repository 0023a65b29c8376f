// Copyright 2026 The ooDir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "oodir/core.hpp"

namespace oodir {

// ---------------------------------------------------------------------------
// Sample sets
// ---------------------------------------------------------------------------

/// Directivity-balloon sample set at one (frequency, distance). Continuous
/// models produce a regular equirectangular grid with elevations below the
/// model's minElev excluded; discrete models produce their stored datapoints
/// at the coerced frequency and distance.
struct BalloonGrid {
  double freq_used = 0.0;
  double dist_used = 1.0;
  double res_deg = 0.0;
  double min_elev = -90.0;
  bool continuous = false;
  std::vector<double> elevations;                  // grid rows, ascending
  std::vector<double> azimuths;                    // grid columns, ascending
  std::vector<double> values;                      // row-major [elev][azim]
  std::vector<std::pair<Direction, double>> points;  // discrete variant

  double value_at(std::size_t row, std::size_t col) const {
    return values[row * azimuths.size() + col];
  }
};

/// Spectrum sample set at one (direction, distance). Frequency-continuous
/// models are sampled from 0 to maxFreq at the requested resolution;
/// frequency-discrete models yield one point per stored frequency.
struct SpectrumSeries {
  Direction dir_used{0.0, 0.0};
  double dist_used = 1.0;
  std::vector<double> freqs;
  std::vector<double> values;
};

namespace detail {

// start, start+step, ... while <= stop (tolerant of representation error).
inline std::vector<double> steps_inclusive(double start, double stop, double step) {
  const std::size_t n =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

// start, start+step, ... while < stop.
inline std::vector<double> steps_exclusive(double start, double stop, double step) {
  const std::size_t n =
      static_cast<std::size_t>(std::floor((stop - start) / step - 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

inline BalloonGrid balloon_samples(const Directivity& model, double freq,
                                   double dist = 1.0, double res_deg = 2.5) {
  if (!(res_deg > 0.0)) fail(ErrorKind::domain, "resolution must be > 0");
  BalloonGrid g;
  g.res_deg = res_deg;
  if (model.continuity().direction) {
    g.continuous = true;
    g.min_elev = model.min_elev_deg();
    g.elevations = detail::steps_inclusive(g.min_elev, 90.0, res_deg);
    g.azimuths = detail::steps_exclusive(0.0, 360.0, res_deg);
    std::vector<Direction> dirs;
    dirs.reserve(g.elevations.size() * g.azimuths.size());
    for (double el : g.elevations)
      for (double az : g.azimuths) dirs.emplace_back(az, el);
    const auto [grid, eff] = model.get_data(Coordinates(dirs, {freq}, {dist}));
    g.freq_used = eff.freqs()[0];
    g.dist_used = eff.dist_at(0);
    g.values.resize(dirs.size());
    for (std::size_t d = 0; d < dirs.size(); ++d) g.values[d] = grid.at(d, 0, 0);
  } else {
    g.continuous = false;
    const auto [grid, eff] = model.get_data(Coordinates({}, {freq}, {dist}));
    g.freq_used = eff.freqs()[0];
    g.dist_used = eff.dist_at(0);
    g.points.reserve(eff.dir_count());
    for (std::size_t d = 0; d < eff.dir_count(); ++d)
      g.points.emplace_back(eff.dirs()[d], grid.at(d, 0, 0));
  }
  return g;
}

inline SpectrumSeries spectrum_samples(const Directivity& model,
                                       const Direction& dir, double dist = 1.0,
                                       double res_hz = 10.0) {
  if (!(res_hz > 0.0)) fail(ErrorKind::domain, "resolution must be > 0");
  std::vector<double> freqs;
  if (model.continuity().frequency) {
    const auto fmax = model.continuous_freq_limit();
    if (!fmax)
      fail(ErrorKind::domain,
           "frequency-continuous model declares no frequency range");
    freqs = detail::steps_inclusive(0.0, *fmax, res_hz);
  }
  // An empty list queries every stored frequency of a discrete model.
  const auto [grid, eff] =
      model.get_data(Coordinates({dir}, std::move(freqs), {dist}));
  SpectrumSeries s;
  s.dir_used = eff.dirs()[0];
  s.dist_used = eff.dist_at(0);
  s.freqs = eff.freqs();
  s.values.resize(eff.freq_count());
  for (std::size_t j = 0; j < eff.freq_count(); ++j) s.values[j] = grid.at(0, j, 0);
  return s;
}

// ---------------------------------------------------------------------------
// CSV emission
//
// Uniform five-column table; every value is rendered with shortest
// round-trip decimals, so parsing a cell back recovers the model output
// bit-exactly. "," separator, "." decimal point, LF line endings.
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "az_deg,el_deg,freq_hz,dist_m,mag_db";

namespace detail {

inline void append_csv_row(std::string& out, double az, double el, double f,
                           double d, double v) {
  out += format_double(az);
  out += ',';
  out += format_double(el);
  out += ',';
  out += format_double(f);
  out += ',';
  out += format_double(d);
  out += ',';
  out += format_double(v);
  out += '\n';
}

}  // namespace detail

inline std::string emit_csv(const BalloonGrid& g) {
  if (g.continuous ? g.values.empty() : g.points.empty())
    fail(ErrorKind::empty, "nothing to render");
  std::string out = kCsvHeader;
  out += '\n';
  if (g.continuous) {
    for (std::size_t r = 0; r < g.elevations.size(); ++r)
      for (std::size_t c = 0; c < g.azimuths.size(); ++c)
        detail::append_csv_row(out, g.azimuths[c], g.elevations[r], g.freq_used,
                               g.dist_used, g.value_at(r, c));
  } else {
    for (const auto& [dir, v] : g.points)
      detail::append_csv_row(out, dir.azimuth_deg(), dir.elevation_deg(),
                             g.freq_used, g.dist_used, v);
  }
  return out;
}

inline std::string emit_csv(const SpectrumSeries& s) {
  if (s.freqs.empty()) fail(ErrorKind::empty, "nothing to render");
  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t j = 0; j < s.freqs.size(); ++j)
    detail::append_csv_row(out, s.dir_used.azimuth_deg(),
                           s.dir_used.elevation_deg(), s.freqs[j], s.dist_used,
                           s.values[j]);
  return out;
}

// ---------------------------------------------------------------------------
// SVG emission (SVG 1.1 subset: rect, path and text elements only)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string svg_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Perceptually ordered dark-blue -> yellow scale (viridis control points).
inline std::string heat_color(double t) {
  static const int stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int s = std::min(3, static_cast<int>(t));
  const double u = t - s;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)",
                static_cast<int>(std::lround(stops[s][0] + u * (stops[s + 1][0] - stops[s][0]))),
                static_cast<int>(std::lround(stops[s][1] + u * (stops[s + 1][1] - stops[s][1]))),
                static_cast<int>(std::lround(stops[s][2] + u * (stops[s + 1][2] - stops[s][2]))));
  return buf;
}

inline void svg_text(std::string& out, double x, double y, const std::string& s,
                     const char* anchor = "start") {
  out += "<text x=\"" + svg_coord(x) + "\" y=\"" + svg_coord(y) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"";
  out += anchor;
  out += "\">";
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  out += "</text>\n";
}

inline void svg_rect(std::string& out, double x, double y, double w, double h,
                     const std::string& fill) {
  out += "<rect x=\"" + svg_coord(x) + "\" y=\"" + svg_coord(y) + "\" width=\"" +
         svg_coord(w) + "\" height=\"" + svg_coord(h) + "\" fill=\"" + fill +
         "\"/>\n";
}

// Color range; a degenerate span widens by +-1 dB so legends stay defined.
inline std::pair<double, double> value_span(const std::vector<double>& vals) {
  double lo = vals[0], hi = vals[0];
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

inline void svg_legend(std::string& out, double x, double y, double h, double lo,
                       double hi) {
  const int kSteps = 64;
  const double cell = h / kSteps;
  for (int i = 0; i < kSteps; ++i) {
    const double t = (kSteps - 1 - i) / static_cast<double>(kSteps - 1);
    svg_rect(out, x, y + i * cell, 14.0, cell + 0.5, heat_color(t));
  }
  svg_text(out, x + 18.0, y + 9.0, svg_label(hi) + " dB");
  svg_text(out, x + 18.0, y + h, svg_label(lo) + " dB");
}

}  // namespace detail

/// Equirectangular heatmap: azimuth on x, elevation on y (top pole up), value
/// mapped onto a viridis-style scale with a legend; the discrete variant
/// draws one marker per stored datapoint. Output is byte-deterministic.
inline std::string emit_balloon_svg(const BalloonGrid& g) {
  if (g.continuous ? g.values.empty() : g.points.empty())
    fail(ErrorKind::empty, "nothing to render");

  const double plot_w = 576.0, plot_h = 288.0;
  const double left = 56.0, top = 36.0;
  const double width = left + plot_w + 96.0, height = top + plot_h + 48.0;
  const double el_lo = g.continuous ? g.min_elev : -90.0;

  std::vector<double> vals;
  if (g.continuous) {
    vals = g.values;
  } else {
    vals.reserve(g.points.size());
    for (const auto& p : g.points) vals.push_back(p.second);
  }
  const auto [lo, hi] = detail::value_span(vals);

  auto x_of = [&](double az) { return left + az / 360.0 * plot_w; };
  auto y_of = [&](double el) {
    return top + (90.0 - el) / (90.0 - el_lo) * plot_h;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::svg_coord(width) + "\" height=\"" + detail::svg_coord(height) +
         "\" viewBox=\"0 0 " + detail::svg_coord(width) + " " +
         detail::svg_coord(height) + "\">\n";
  detail::svg_rect(out, 0, 0, width, height, "white");
  detail::svg_text(out, left, 20.0,
                   "directivity balloon  f=" + detail::format_double(g.freq_used) +
                       " Hz  d=" + detail::format_double(g.dist_used) + " m");

  if (g.continuous) {
    const double cw = plot_w / static_cast<double>(g.azimuths.size());
    const double ch = plot_h / static_cast<double>(g.elevations.size());
    for (std::size_t r = 0; r < g.elevations.size(); ++r) {
      // rows ascend in elevation; draw top row for the highest elevation
      const double y = top + static_cast<double>(g.elevations.size() - 1 - r) * ch;
      for (std::size_t c = 0; c < g.azimuths.size(); ++c) {
        const double t = (g.value_at(r, c) - lo) / (hi - lo);
        detail::svg_rect(out, left + c * cw, y, cw + 0.1, ch + 0.1,
                         detail::heat_color(t));
      }
    }
  } else {
    for (const auto& [dir, v] : g.points) {
      const double t = (v - lo) / (hi - lo);
      detail::svg_rect(out, x_of(dir.azimuth_deg()) - 2.0,
                       y_of(dir.elevation_deg()) - 2.0, 4.0, 4.0,
                       detail::heat_color(t));
    }
  }

  // frame and axis labels
  out += "<path d=\"M " + detail::svg_coord(left) + " " + detail::svg_coord(top) +
         " L " + detail::svg_coord(left) + " " + detail::svg_coord(top + plot_h) +
         " L " + detail::svg_coord(left + plot_w) + " " +
         detail::svg_coord(top + plot_h) + " L " + detail::svg_coord(left + plot_w) +
         " " + detail::svg_coord(top) + " Z\" fill=\"none\" stroke=\"black\"/>\n";
  for (int az = 0; az <= 360; az += 90)
    detail::svg_text(out, x_of(az), top + plot_h + 16.0, detail::svg_label(az),
                     "middle");
  detail::svg_text(out, left + plot_w / 2.0, top + plot_h + 34.0,
                   "azimuth (deg)", "middle");
  detail::svg_text(out, left - 6.0, top + 4.0, detail::svg_label(90.0), "end");
  detail::svg_text(out, left - 6.0, top + plot_h + 4.0, detail::svg_label(el_lo),
                   "end");
  detail::svg_text(out, left - 6.0, top + plot_h / 2.0 + 4.0,
                   detail::svg_label((90.0 + el_lo) / 2.0), "end");
  detail::svg_legend(out, left + plot_w + 24.0, top, plot_h, lo, hi);
  out += "</svg>\n";
  return out;
}

/// Line chart of magnitude over frequency with axis labels.
inline std::string emit_spectrum_svg(const SpectrumSeries& s) {
  if (s.freqs.empty()) fail(ErrorKind::empty, "nothing to render");

  const double plot_w = 576.0, plot_h = 288.0;
  const double left = 64.0, top = 36.0;
  const double width = left + plot_w + 32.0, height = top + plot_h + 48.0;

  const auto [lo, hi] = detail::value_span(s.values);
  const double f_lo = s.freqs.front();
  const double f_hi = s.freqs.back() > f_lo ? s.freqs.back() : f_lo + 1.0;

  auto x_of = [&](double f) { return left + (f - f_lo) / (f_hi - f_lo) * plot_w; };
  auto y_of = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::svg_coord(width) + "\" height=\"" + detail::svg_coord(height) +
         "\" viewBox=\"0 0 " + detail::svg_coord(width) + " " +
         detail::svg_coord(height) + "\">\n";
  detail::svg_rect(out, 0, 0, width, height, "white");
  detail::svg_text(
      out, left, 20.0,
      "spectrum  az=" + detail::format_double(s.dir_used.azimuth_deg()) +
          "  el=" + detail::format_double(s.dir_used.elevation_deg()) +
          "  d=" + detail::format_double(s.dist_used) + " m");

  out += "<path d=\"";
  for (std::size_t j = 0; j < s.freqs.size(); ++j) {
    out += j == 0 ? "M " : " L ";
    out += detail::svg_coord(x_of(s.freqs[j]));
    out += ' ';
    out += detail::svg_coord(y_of(s.values[j]));
  }
  if (s.freqs.size() == 1) out += " L " + detail::svg_coord(x_of(f_hi)) + " " +
                                  detail::svg_coord(y_of(s.values[0]));
  out += "\" fill=\"none\" stroke=\"rgb(33,102,172)\" stroke-width=\"1.5\"/>\n";

  out += "<path d=\"M " + detail::svg_coord(left) + " " + detail::svg_coord(top) +
         " L " + detail::svg_coord(left) + " " + detail::svg_coord(top + plot_h) +
         " L " + detail::svg_coord(left + plot_w) + " " +
         detail::svg_coord(top + plot_h) + " L " + detail::svg_coord(left + plot_w) +
         " " + detail::svg_coord(top) + " Z\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double f = f_lo + (f_hi - f_lo) * i / 4.0;
    detail::svg_text(out, x_of(f), top + plot_h + 16.0, detail::svg_label(f),
                     "middle");
  }
  detail::svg_text(out, left + plot_w / 2.0, top + plot_h + 34.0,
                   "frequency (Hz)", "middle");
  detail::svg_text(out, left - 6.0, top + 4.0, detail::svg_label(hi), "end");
  detail::svg_text(out, left - 6.0, top + plot_h + 4.0, detail::svg_label(lo),
                   "end");
  detail::svg_text(out, left - 6.0, top + plot_h / 2.0 + 4.0,
                   detail::svg_label((lo + hi) / 2.0), "end");
  out += "</svg>\n";
  return out;
}

}  // namespace oodir
