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

#include <string>
#include <utility>
#include <vector>

#include "oodir/core.hpp"

namespace oodir {

/// Discretely sampled measurement data; the basis every fitted representation
/// is derived from. Values are stored exactly as ingested, with no resampling
/// or smoothing.
class RawDirectivity final : public Directivity {
 public:
  RawDirectivity(std::string info, Coordinates coords, DataGrid grid)
      : Directivity(std::move(info), Continuity{false, false, false}),
        coords_(std::move(coords)), grid_(std::move(grid)) {
    if (coords_.dirs().empty() || coords_.freqs().empty())
      fail(ErrorKind::domain,
           "raw directivity requires at least one direction and one frequency");
    require_increasing(coords_);
    require_grid_matches(coords_, grid_);
  }

  const Coordinates& coords() const noexcept { return coords_; }
  const DataGrid& grid() const noexcept { return grid_; }

  Coordinates get_data_coords() const override { return coords_; }

  /// Pointwise lookup with coercion along every dimension. Queries never
  /// fail on out-of-range coordinates; callers detect coercion by comparing
  /// the returned coordinates with the query. An empty query list selects
  /// every stored coordinate along that dimension (distances default to 1 m).
  std::pair<DataGrid, Coordinates> get_data(const Coordinates& query) const override {
    std::vector<std::size_t> dir_idx;
    std::vector<Direction> dir_vals;
    if (query.dirs().empty()) {
      dir_idx.resize(coords_.dir_count());
      for (std::size_t i = 0; i < dir_idx.size(); ++i) dir_idx[i] = i;
      dir_vals = coords_.dirs();
    } else {
      dir_idx.reserve(query.dirs().size());
      dir_vals.reserve(query.dirs().size());
      for (const Direction& d : query.dirs()) {
        const auto c = coerce_direction(coords_, d);
        dir_idx.push_back(c.index);
        dir_vals.push_back(c.value);
      }
    }
    auto [freq_idx, freq_vals] = detail::coerce_freq_list(coords_, query.freqs());
    auto [dist_idx, dist_vals] = detail::coerce_dist_list(coords_, query.dists());

    std::vector<double> out;
    out.reserve(dir_idx.size() * freq_idx.size() * dist_idx.size());
    for (std::size_t i : dir_idx)
      for (std::size_t j : freq_idx)
        for (std::size_t k : dist_idx) out.push_back(grid_.at(i, j, k));

    DataGrid grid(dir_idx.size(), freq_idx.size(), dist_idx.size(), std::move(out));
    Coordinates effective(std::move(dir_vals), std::move(freq_vals),
                          std::move(dist_vals));
    return {std::move(grid), std::move(effective)};
  }

 private:
  Coordinates coords_;
  DataGrid grid_;
};

}  // namespace oodir
