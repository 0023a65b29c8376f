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

// Synthesizes a frequency-dependent cardioid-like source, fits SH and HSH
// models to it, and writes the data, the models and a rendered balloon to the
// current directory.

#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include "oodir/oodir.hpp"

int main() {
  using namespace oodir;

  std::vector<Direction> dirs;
  for (int el = -80; el <= 80; el += 10)
    for (int az = 0; az < 360; az += 10) dirs.emplace_back(az, el);
  std::vector<double> freqs;
  for (int i = 0; i < 24; ++i) freqs.push_back(250.0 * (i + 1));

  // Cardioid toward azimuth 0 that sharpens with frequency.
  std::vector<double> values;
  values.reserve(dirs.size() * freqs.size());
  for (const Direction& d : dirs) {
    const double caz = std::cos(d.azimuth_rad()) * std::cos(detail::deg2rad(d.elevation_deg()));
    for (double f : freqs) {
      const double sharp = 0.5 + 1.5 * f / freqs.back();
      const double gain = std::pow(0.5 * (1.0 + caz), sharp);
      values.push_back(20.0 * std::log10(gain + 1e-3));
    }
  }

  RawDirectivity raw("demo cardioid source", Coordinates(dirs, freqs, {}),
                     DataGrid(dirs.size(), freqs.size(), 1, values));

  const ShModel sh = sh_fit(raw, 8, 8);
  const HshModel hsh = hsh_fit(raw, 8, 8);
  std::cout << "sh residual:  " << training_residual_rms_db(sh, raw) << " dB rms\n"
            << "hsh residual: " << training_residual_rms_db(hsh, raw)
            << " dB rms\n";

  std::ofstream("demo_source.dif.json") << write_dif(raw);
  std::ofstream("demo_sh.model.json") << write_model(sh);
  std::ofstream("demo_hsh.model.json") << write_model(hsh);
  std::ofstream("demo_balloon.svg") << emit_balloon_svg(balloon_samples(sh, 3000.0));
  std::ofstream("demo_spectrum.svg")
      << emit_spectrum_svg(spectrum_samples(hsh, Direction(45.0, 0.0)));
  std::cout << "wrote demo_source.dif.json, demo_sh.model.json, "
               "demo_hsh.model.json, demo_balloon.svg, demo_spectrum.svg\n";
  return 0;
}
