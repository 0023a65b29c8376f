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

// Command-line front end: ingestion, fitting, sampling, rendering and
// comparison as reproducible batch commands. Exit codes: 0 success, 1 usage
// or parameter error, 2 data or format error. Diagnostics go to stderr; data
// goes to files or stdout.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "oodir/oodir.hpp"

namespace {

using namespace oodir;

// Parameter problems detected at the CLI boundary; everything else escaping
// as oodir::Error is a data problem.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] void usage_fail(const std::string& msg) { throw UsageError(msg); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open \"" + path + '"');
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "cannot read \"" + path + '"');
  return std::move(ss).str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open \"" + path + "\" for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::io, "cannot write \"" + path + '"');
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Loads a DIF document, a model document, or (by extension) a CSV table.
Document load_document(const std::string& path) {
  const std::string bytes = read_file(path);
  if (ends_with(path, ".csv")) return read_csv(bytes);
  return read_document(bytes);
}

const Directivity& as_directivity(const Document& doc) {
  return std::visit([](const auto& d) -> const Directivity& { return d; }, doc);
}

const char* kind_name(const Document& doc) {
  switch (doc.index()) {
    case 0: return "raw";
    case 1: return "sh";
    default: return "hsh";
  }
}

// Coordinate specs: a single value "90", a list "0,45,90", or a range
// "start:step:stop" (stop inclusive when it lies on the lattice).
std::vector<double> parse_spec(const std::string& spec, const char* what) {
  std::vector<double> out;
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const auto colon2 = spec.find(':', colon + 1);
    if (colon2 == std::string::npos)
      usage_fail(std::string(what) + ": range spec must be start:step:stop");
    const auto a = detail::parse_double(spec.substr(0, colon));
    const auto s = detail::parse_double(spec.substr(colon + 1, colon2 - colon - 1));
    const auto b = detail::parse_double(spec.substr(colon2 + 1));
    if (!a || !s || !b)
      usage_fail(std::string(what) + ": malformed number in \"" + spec + '"');
    if (!(*s > 0.0)) usage_fail(std::string(what) + ": step must be > 0");
    if (*b < *a) usage_fail(std::string(what) + ": stop must be >= start");
    return detail::steps_inclusive(*a, *b, *s);
  }
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = spec.find(',', pos);
    const std::string tok = spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto v = detail::parse_double(tok);
    if (!v) usage_fail(std::string(what) + ": malformed number \"" + tok + '"');
    out.push_back(*v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<Direction> make_directions(const std::vector<double>& azimuths,
                                       const std::vector<double>& elevations) {
  for (double el : elevations)
    if (!(el >= -90.0 && el <= 90.0))
      usage_fail("elevation " + detail::format_double(el) + " outside [-90, 90]");
  std::vector<Direction> dirs;
  dirs.reserve(azimuths.size() * elevations.size());
  for (double el : elevations)
    for (double az : azimuths) dirs.emplace_back(az, el);
  return dirs;
}

void emit_output(const std::optional<std::string>& path, const std::string& bytes) {
  if (path)
    write_file(*path, bytes);
  else
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
}

// ---------------------------------------------------------------------------
// info
// ---------------------------------------------------------------------------

std::string describe(const Document& doc) {
  const Directivity& d = as_directivity(doc);
  const Coordinates coords = d.get_data_coords();
  std::string out;
  out += std::string("kind: ") + kind_name(doc) + '\n';
  out += "info: " + d.info() + '\n';
  const Continuity& c = d.continuity();
  out += "continuity: " + std::to_string(c.direction ? 1 : 0) + ' ' +
         std::to_string(c.frequency ? 1 : 0) + ' ' +
         std::to_string(c.distance ? 1 : 0) + '\n';

  if (c.direction) {
    out += "directions: continuous (min elevation " +
           detail::format_double(d.min_elev_deg()) + " deg)\n";
  } else {
    out += "directions: " + std::to_string(coords.dir_count()) + " stored\n";
  }
  if (c.frequency) {
    out += "frequencies: continuous in [0, " +
           detail::format_double(*d.continuous_freq_limit()) + "] Hz\n";
  } else {
    out += "frequencies: " + std::to_string(coords.freq_count()) + " stored in [" +
           detail::format_double(coords.freqs().front()) + ", " +
           detail::format_double(coords.freqs().back()) + "] Hz\n";
  }
  if (coords.dists().empty()) {
    out += "distances: 1 m (implicit)\n";
  } else {
    out += "distances: " + std::to_string(coords.dists().size()) + " stored in [" +
           detail::format_double(coords.dists().front()) + ", " +
           detail::format_double(coords.dists().back()) + "] m\n";
  }
  if (const auto* sh = std::get_if<ShModel>(&doc)) {
    out += "params: lmax=" + std::to_string(sh->lmax()) +
           " mmax=" + std::to_string(sh->mmax()) +
           " minElev=" + detail::format_double(sh->min_elev_deg()) + '\n';
  } else if (const auto* hsh = std::get_if<HshModel>(&doc)) {
    out += "params: nmax=" + std::to_string(hsh->nmax()) +
           " mmax=" + std::to_string(hsh->mmax()) +
           " maxFreq=" + detail::format_double(hsh->max_freq()) +
           " minElev=" + detail::format_double(hsh->min_elev_deg()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitOptions {
  std::string input;
  std::string output;
  int lmax = 0;
  int mmax = 0;
  int nmax = 0;
  std::optional<double> max_freq;
  double min_elev = -90.0;
  std::optional<std::string> info;
  bool verbose = false;
};

const RawDirectivity& require_raw(const Document& doc, const std::string& path) {
  const auto* raw = std::get_if<RawDirectivity>(&doc);
  if (!raw)
    fail(ErrorKind::format, '"' + path + "\" does not hold raw directivity data");
  return *raw;
}

void run_fit_sh(const FitOptions& opt) {
  if (opt.lmax < 0 || opt.mmax < 0 || opt.mmax > opt.lmax)
    usage_fail("truncation requires 0 <= mmax <= lmax");
  if (!(opt.min_elev >= -90.0 && opt.min_elev <= 90.0))
    usage_fail("--min-elev must lie in [-90, 90]");
  const Document doc = load_document(opt.input);
  const RawDirectivity& raw = require_raw(doc, opt.input);
  const int nb = sh_basis_count(opt.lmax, opt.mmax);
  if (static_cast<std::size_t>(nb) > raw.coords().dir_count())
    std::cerr << "warning: " << nb << " basis functions but only "
              << raw.coords().dir_count()
              << " directions; fit is underdetermined\n";
  if (opt.verbose)
    std::cerr << "fitting " << nb << " SH coefficients per slab over "
              << raw.coords().dir_count() << " directions\n";
  const ShModel model = sh_fit(raw, opt.lmax, opt.mmax, opt.min_elev, opt.info);
  write_file(opt.output, write_model(model));
  std::cout << "residual_rms_db: "
            << detail::format_double(training_residual_rms_db(model, raw)) << '\n';
}

void run_fit_hsh(const FitOptions& opt) {
  if (opt.nmax < 0 || opt.mmax < 0)
    usage_fail("truncation requires nmax >= 0 and mmax >= 0");
  if (opt.max_freq && !(*opt.max_freq > 0.0)) usage_fail("--max-freq must be > 0");
  if (!(opt.min_elev >= -90.0 && opt.min_elev <= 90.0))
    usage_fail("--min-elev must lie in [-90, 90]");
  const Document doc = load_document(opt.input);
  const RawDirectivity& raw = require_raw(doc, opt.input);
  const int nb = hsh_basis_count(opt.nmax, opt.mmax);
  const std::size_t samples = raw.coords().dir_count() * raw.coords().freq_count();
  if (static_cast<std::size_t>(nb) > samples)
    std::cerr << "warning: " << nb << " basis functions but only " << samples
              << " samples; fit is underdetermined\n";
  if (opt.verbose)
    std::cerr << "fitting " << nb << " HSH coefficients per distance over "
              << samples << " samples\n";
  const HshModel model =
      hsh_fit(raw, opt.nmax, opt.mmax, opt.max_freq, opt.min_elev, opt.info);
  write_file(opt.output, write_model(model));
  std::cout << "residual_rms_db: "
            << detail::format_double(training_residual_rms_db(model, raw)) << '\n';
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleOptions {
  std::string model_file;
  std::optional<std::string> az, el, freq;
  std::optional<double> dist;
  std::optional<std::string> output;
};

// Builds the query lattice for sample/compare. Omitted direction or frequency
// specs fall back to a discrete model's stored coordinates; continuous models
// need them spelled out.
Coordinates build_query(const Directivity& model, const SampleOptions& opt) {
  std::vector<Direction> dirs;
  if (opt.az || opt.el) {
    if (!opt.az || !opt.el) usage_fail("--az and --el must be given together");
    dirs = make_directions(parse_spec(*opt.az, "--az"), parse_spec(*opt.el, "--el"));
  } else if (model.continuity().direction) {
    usage_fail("model is continuous over direction; --az and --el required");
  }
  std::vector<double> freqs;
  if (opt.freq) {
    freqs = parse_spec(*opt.freq, "--freq");
  } else if (model.continuity().frequency) {
    usage_fail("model is continuous over frequency; --freq required");
  }
  std::vector<double> dists;
  if (opt.dist) {
    if (!(*opt.dist > 0.0)) usage_fail("--dist must be > 0");
    dists.push_back(*opt.dist);
  }
  return Coordinates(std::move(dirs), std::move(freqs), std::move(dists));
}

void run_sample(const SampleOptions& opt) {
  const Document doc = load_document(opt.model_file);
  const Directivity& model = as_directivity(doc);
  const auto [grid, eff] = model.get_data(build_query(model, opt));

  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < grid.dir_count(); ++i)
    for (std::size_t j = 0; j < grid.freq_count(); ++j)
      for (std::size_t k = 0; k < grid.dist_count(); ++k)
        detail::append_csv_row(out, eff.dirs()[i].azimuth_deg(),
                               eff.dirs()[i].elevation_deg(), eff.freqs()[j],
                               eff.dist_at(k), grid.at(i, j, k));
  emit_output(opt.output, out);
}

// ---------------------------------------------------------------------------
// balloon / spectrum
// ---------------------------------------------------------------------------

struct RenderOptions {
  std::string model_file;
  double freq = 0.0;
  double az = 0.0;
  double el = 0.0;
  double res_deg = 2.5;
  double res_hz = 10.0;
  double dist = 1.0;
  std::optional<std::string> svg_out;
  std::optional<std::string> csv_out;
};

void run_balloon(const RenderOptions& opt) {
  if (!(opt.res_deg > 0.0)) usage_fail("--res-deg must be > 0");
  if (!(opt.dist > 0.0)) usage_fail("--dist must be > 0");
  if (!opt.svg_out && !opt.csv_out)
    usage_fail("at least one of --svg or --csv is required");
  const Document doc = load_document(opt.model_file);
  const BalloonGrid g =
      balloon_samples(as_directivity(doc), opt.freq, opt.dist, opt.res_deg);
  if (g.freq_used != opt.freq)
    std::cerr << "note: frequency coerced to "
              << detail::format_double(g.freq_used) << " Hz\n";
  if (g.dist_used != opt.dist)
    std::cerr << "note: distance coerced to "
              << detail::format_double(g.dist_used) << " m\n";
  if (opt.svg_out) write_file(*opt.svg_out, emit_balloon_svg(g));
  if (opt.csv_out) write_file(*opt.csv_out, emit_csv(g));
}

void run_spectrum(const RenderOptions& opt) {
  if (!(opt.res_hz > 0.0)) usage_fail("--res-hz must be > 0");
  if (!(opt.dist > 0.0)) usage_fail("--dist must be > 0");
  if (!(opt.el >= -90.0 && opt.el <= 90.0))
    usage_fail("--el must lie in [-90, 90]");
  if (!opt.svg_out && !opt.csv_out)
    usage_fail("at least one of --svg or --csv is required");
  const Document doc = load_document(opt.model_file);
  const Direction requested(opt.az, opt.el);
  const SpectrumSeries s =
      spectrum_samples(as_directivity(doc), requested, opt.dist, opt.res_hz);
  if (!(s.dir_used == requested))
    std::cerr << "note: direction coerced to az "
              << detail::format_double(s.dir_used.azimuth_deg()) << ", el "
              << detail::format_double(s.dir_used.elevation_deg()) << '\n';
  if (s.dist_used != opt.dist)
    std::cerr << "note: distance coerced to "
              << detail::format_double(s.dist_used) << " m\n";
  if (opt.svg_out) write_file(*opt.svg_out, emit_spectrum_svg(s));
  if (opt.csv_out) write_file(*opt.csv_out, emit_csv(s));
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOptions {
  std::string file_a;
  std::string file_b;
  SampleOptions grid;  // az/el/freq/dist specs
  std::optional<std::string> output;
};

// Grid defaults: directions and frequencies come from whichever file is
// discrete along that dimension (preferring A), so a model can be compared
// against its source data on the training lattice with no explicit spec.
Coordinates compare_grid(const Directivity& a, const Directivity& b,
                         const SampleOptions& opt) {
  std::vector<Direction> dirs;
  if (opt.az || opt.el) {
    if (!opt.az || !opt.el) usage_fail("--az and --el must be given together");
    dirs = make_directions(parse_spec(*opt.az, "--az"), parse_spec(*opt.el, "--el"));
  } else if (!a.continuity().direction) {
    dirs = a.get_data_coords().dirs();
  } else if (!b.continuity().direction) {
    dirs = b.get_data_coords().dirs();
  } else {
    usage_fail("both files are continuous over direction; --az and --el required");
  }
  std::vector<double> freqs;
  if (opt.freq) {
    freqs = parse_spec(*opt.freq, "--freq");
  } else if (!a.continuity().frequency) {
    freqs = a.get_data_coords().freqs();
  } else if (!b.continuity().frequency) {
    freqs = b.get_data_coords().freqs();
  } else {
    usage_fail("both files are continuous over frequency; --freq required");
  }
  std::vector<double> dists;
  if (opt.dist) {
    if (!(*opt.dist > 0.0)) usage_fail("--dist must be > 0");
    dists.push_back(*opt.dist);
  }
  return Coordinates(std::move(dirs), std::move(freqs), std::move(dists));
}

void run_compare(const CompareOptions& opt) {
  const Document doc_a = load_document(opt.file_a);
  const Document doc_b = load_document(opt.file_b);
  const Directivity& a = as_directivity(doc_a);
  const Directivity& b = as_directivity(doc_b);

  const Coordinates query = compare_grid(a, b, opt.grid);
  const auto [grid_a, eff_a] = a.get_data(query);
  const auto [grid_b, eff_b] = b.get_data(query);

  std::string out;
  out += "comparison\n";
  out += "  a: " + opt.file_a + " (kind " + kind_name(doc_a) + ")\n";
  out += "  b: " + opt.file_b + " (kind " + kind_name(doc_b) + ")\n";
  out += "  grid: " + std::to_string(query.dir_count()) + " directions x " +
         std::to_string(query.freq_count()) + " frequencies x " +
         std::to_string(query.dist_count()) + " distances\n";
  out += "rms_db overall: " +
         detail::format_double(grid_rms_error_db(grid_a, grid_b)) + '\n';
  out += "max_abs_db overall: " +
         detail::format_double(grid_max_abs_error_db(grid_a, grid_b)) + '\n';
  out += "per frequency:\n";
  const std::size_t nd = grid_a.dir_count();
  const std::size_t nk = grid_a.dist_count();
  for (std::size_t j = 0; j < grid_a.freq_count(); ++j) {
    double sum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < nd; ++i)
      for (std::size_t k = 0; k < nk; ++k) {
        const double d = grid_a.at(i, j, k) - grid_b.at(i, j, k);
        sum += d * d;
        mx = std::max(mx, std::abs(d));
      }
    const double rms = std::sqrt(sum / static_cast<double>(nd * nk));
    out += "  freq " + detail::format_double(query.freqs()[j]);
    // surface coercion along discrete frequency axes
    if (eff_a.freqs()[j] != query.freqs()[j] ||
        eff_b.freqs()[j] != query.freqs()[j])
      out += " (a: " + detail::format_double(eff_a.freqs()[j]) +
             ", b: " + detail::format_double(eff_b.freqs()[j]) + ")";
    out += ": rms " + detail::format_double(rms) + " max " +
           detail::format_double(mx) + '\n';
  }
  emit_output(opt.output, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oodir: unified directivity representations (raw grids, "
               "spherical and hyperspherical harmonic models)"};
  app.require_subcommand(1);

  static const char* kSpecHelp =
      "single value, comma list, or start:step:stop range";

  std::string info_file;
  auto* cmd_info = app.add_subcommand("info", "describe a DIF or model file");
  cmd_info->add_option("file", info_file, "input file")->required();

  FitOptions fit_sh_opt;
  auto* cmd_fit_sh =
      app.add_subcommand("fit-sh", "fit a spherical-harmonic model");
  cmd_fit_sh->add_option("input", fit_sh_opt.input, "raw DIF or CSV file")
      ->required();
  cmd_fit_sh->add_option("-o,--output", fit_sh_opt.output, "model file to write")
      ->required();
  cmd_fit_sh->add_option("--lmax", fit_sh_opt.lmax, "maximum SH degree")
      ->required();
  cmd_fit_sh->add_option("--mmax", fit_sh_opt.mmax, "maximum SH order")
      ->required();
  cmd_fit_sh->add_option("--min-elev", fit_sh_opt.min_elev,
                         "lowest trustworthy elevation (deg)");
  std::string fit_sh_info;
  auto* fit_sh_info_opt =
      cmd_fit_sh->add_option("--info", fit_sh_info, "model description");
  cmd_fit_sh->add_flag("--verbose", fit_sh_opt.verbose, "progress to stderr");

  FitOptions fit_hsh_opt;
  auto* cmd_fit_hsh =
      app.add_subcommand("fit-hsh", "fit a hyperspherical-harmonic model");
  cmd_fit_hsh->add_option("input", fit_hsh_opt.input, "raw DIF or CSV file")
      ->required();
  cmd_fit_hsh->add_option("-o,--output", fit_hsh_opt.output, "model file to write")
      ->required();
  cmd_fit_hsh->add_option("--nmax", fit_hsh_opt.nmax, "maximum HSH degree")
      ->required();
  cmd_fit_hsh->add_option("--mmax", fit_hsh_opt.mmax, "maximum SH order")
      ->required();
  double fit_hsh_max_freq = 0.0;
  auto* max_freq_opt = cmd_fit_hsh->add_option(
      "--max-freq", fit_hsh_max_freq,
      "upper frequency bound (default: highest measured)");
  cmd_fit_hsh->add_option("--min-elev", fit_hsh_opt.min_elev,
                          "lowest trustworthy elevation (deg)");
  std::string fit_hsh_info;
  auto* fit_hsh_info_opt =
      cmd_fit_hsh->add_option("--info", fit_hsh_info, "model description");
  cmd_fit_hsh->add_flag("--verbose", fit_hsh_opt.verbose, "progress to stderr");

  SampleOptions sample_opt;
  std::string sample_az, sample_el, sample_freq;
  double sample_dist = 0.0;
  std::string sample_out;
  auto* cmd_sample =
      app.add_subcommand("sample", "evaluate a model on a lattice, as CSV");
  cmd_sample->add_option("model", sample_opt.model_file, "DIF or model file")
      ->required();
  auto* sample_az_opt = cmd_sample->add_option(
      "--az", sample_az, std::string("azimuths (deg): ") + kSpecHelp);
  auto* sample_el_opt = cmd_sample->add_option(
      "--el", sample_el, std::string("elevations (deg): ") + kSpecHelp);
  auto* sample_freq_opt = cmd_sample->add_option(
      "--freq", sample_freq, std::string("frequencies (Hz): ") + kSpecHelp);
  auto* sample_dist_opt =
      cmd_sample->add_option("--dist", sample_dist, "distance (m), default 1");
  auto* sample_out_opt =
      cmd_sample->add_option("-o,--output", sample_out, "CSV file (default stdout)");

  RenderOptions balloon_opt;
  std::string balloon_svg, balloon_csv;
  auto* cmd_balloon =
      app.add_subcommand("balloon", "directivity balloon at one frequency");
  cmd_balloon->add_option("model", balloon_opt.model_file, "DIF or model file")
      ->required();
  cmd_balloon->add_option("--freq", balloon_opt.freq, "frequency (Hz)")
      ->required();
  cmd_balloon->add_option("--res-deg", balloon_opt.res_deg,
                          "grid resolution (deg), default 2.5");
  cmd_balloon->add_option("--dist", balloon_opt.dist, "distance (m), default 1");
  auto* balloon_svg_opt =
      cmd_balloon->add_option("--svg", balloon_svg, "SVG file to write");
  auto* balloon_csv_opt =
      cmd_balloon->add_option("--csv", balloon_csv, "CSV file to write");

  RenderOptions spectrum_opt;
  std::string spectrum_svg, spectrum_csv;
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "magnitude spectrum at one direction");
  cmd_spectrum->add_option("model", spectrum_opt.model_file, "DIF or model file")
      ->required();
  cmd_spectrum->add_option("--az", spectrum_opt.az, "azimuth (deg)")->required();
  cmd_spectrum->add_option("--el", spectrum_opt.el, "elevation (deg)")->required();
  cmd_spectrum->add_option("--res-hz", spectrum_opt.res_hz,
                           "frequency resolution (Hz), default 10");
  cmd_spectrum->add_option("--dist", spectrum_opt.dist, "distance (m), default 1");
  auto* spectrum_svg_opt =
      cmd_spectrum->add_option("--svg", spectrum_svg, "SVG file to write");
  auto* spectrum_csv_opt =
      cmd_spectrum->add_option("--csv", spectrum_csv, "CSV file to write");

  CompareOptions compare_opt;
  std::string compare_az, compare_el, compare_freq, compare_out;
  double compare_dist = 0.0;
  auto* cmd_compare = app.add_subcommand(
      "compare", "sample two files on a common grid and report dB errors");
  cmd_compare->add_option("file_a", compare_opt.file_a, "first file")->required();
  cmd_compare->add_option("file_b", compare_opt.file_b, "second file")->required();
  auto* compare_az_opt = cmd_compare->add_option(
      "--az", compare_az, std::string("azimuths (deg): ") + kSpecHelp);
  auto* compare_el_opt = cmd_compare->add_option(
      "--el", compare_el, std::string("elevations (deg): ") + kSpecHelp);
  auto* compare_freq_opt = cmd_compare->add_option(
      "--freq", compare_freq, std::string("frequencies (Hz): ") + kSpecHelp);
  auto* compare_dist_opt =
      cmd_compare->add_option("--dist", compare_dist, "distance (m), default 1");
  auto* compare_out_opt = cmd_compare->add_option(
      "-o,--output", compare_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(cmd_info)) {
      std::cout << describe(load_document(info_file));
    } else if (app.got_subcommand(cmd_fit_sh)) {
      if (*fit_sh_info_opt) fit_sh_opt.info = fit_sh_info;
      run_fit_sh(fit_sh_opt);
    } else if (app.got_subcommand(cmd_fit_hsh)) {
      if (*fit_hsh_info_opt) fit_hsh_opt.info = fit_hsh_info;
      if (*max_freq_opt) fit_hsh_opt.max_freq = fit_hsh_max_freq;
      run_fit_hsh(fit_hsh_opt);
    } else if (app.got_subcommand(cmd_sample)) {
      if (*sample_az_opt) sample_opt.az = sample_az;
      if (*sample_el_opt) sample_opt.el = sample_el;
      if (*sample_freq_opt) sample_opt.freq = sample_freq;
      if (*sample_dist_opt) sample_opt.dist = sample_dist;
      if (*sample_out_opt) sample_opt.output = sample_out;
      run_sample(sample_opt);
    } else if (app.got_subcommand(cmd_balloon)) {
      if (*balloon_svg_opt) balloon_opt.svg_out = balloon_svg;
      if (*balloon_csv_opt) balloon_opt.csv_out = balloon_csv;
      run_balloon(balloon_opt);
    } else if (app.got_subcommand(cmd_spectrum)) {
      if (*spectrum_svg_opt) spectrum_opt.svg_out = spectrum_svg;
      if (*spectrum_csv_opt) spectrum_opt.csv_out = spectrum_csv;
      run_spectrum(spectrum_opt);
    } else if (app.got_subcommand(cmd_compare)) {
      if (*compare_az_opt) compare_opt.grid.az = compare_az;
      if (*compare_el_opt) compare_opt.grid.el = compare_el;
      if (*compare_freq_opt) compare_opt.grid.freq = compare_freq;
      if (*compare_dist_opt) compare_opt.grid.dist = compare_dist;
      if (*compare_out_opt) compare_opt.output = compare_out;
      run_compare(compare_opt);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
