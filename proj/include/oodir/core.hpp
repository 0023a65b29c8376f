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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oodir {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind {
  domain,          // invalid argument or parameter value
  shape,           // array dimensions disagree
  range,           // query outside a continuous dimension's declared range
  not_applicable,  // dimension has no coordinates to coerce against
  order,           // coordinate list not strictly increasing
  parse,           // malformed document text
  format,          // unknown format tag, version, kind or convention
  non_grid,        // samples do not cover a complete Cartesian grid
  duplicate,       // the same grid cell appears twice
  io,              // file system failure
  empty,           // nothing to render
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

namespace detail {

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Strict full-string double parse; nullopt on any trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Direction
// ---------------------------------------------------------------------------

/// A direction on the sphere: azimuth in degrees, counterclockwise,
/// normalized to [0, 360); elevation in degrees, [-90, 90], +90 at the top
/// pole.
class Direction {
 public:
  Direction(double azimuth_deg, double elevation_deg) {
    if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg))
      fail(ErrorKind::domain, "direction angles must be finite");
    if (elevation_deg < -90.0 || elevation_deg > 90.0)
      fail(ErrorKind::domain, "elevation " + detail::format_double(elevation_deg) +
                                  " outside [-90, 90]");
    az_ = std::fmod(azimuth_deg, 360.0);
    if (az_ < 0.0) az_ += 360.0;
    if (az_ >= 360.0) az_ = 0.0;  // fmod rounding can land exactly on 360
    el_ = elevation_deg;
  }

  double azimuth_deg() const noexcept { return az_; }
  double elevation_deg() const noexcept { return el_; }

  double azimuth_rad() const noexcept { return detail::deg2rad(az_); }
  /// Colatitude: 0 at the top pole, pi at the bottom.
  double colatitude_rad() const noexcept { return detail::deg2rad(90.0 - el_); }

  friend bool operator==(const Direction& a, const Direction& b) = default;

 private:
  double az_;
  double el_;
};

/// Great-circle angle between two directions, in radians.
inline double angular_distance_rad(const Direction& a, const Direction& b) {
  const double ea = detail::deg2rad(a.elevation_deg());
  const double eb = detail::deg2rad(b.elevation_deg());
  const double daz = detail::deg2rad(a.azimuth_deg() - b.azimuth_deg());
  const double c =
      std::sin(ea) * std::sin(eb) + std::cos(ea) * std::cos(eb) * std::cos(daz);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Coordinates
// ---------------------------------------------------------------------------

/// The sampling lattice: directions, frequencies (Hz) and distances (m).
///
/// Any list may be empty, meaning the dimension is not applicable. An empty
/// distance list is interpreted everywhere as the single distance 1 m.
/// Construction checks only value validity; coordinate lists owned by models
/// and documents are additionally required to be strictly increasing (see
/// require_increasing), while query and coerced-result lists may repeat values
/// in any order.
class Coordinates {
 public:
  Coordinates() = default;

  Coordinates(std::vector<Direction> dirs, std::vector<double> freqs,
              std::vector<double> dists)
      : dirs_(std::move(dirs)), freqs_(std::move(freqs)), dists_(std::move(dists)) {
    for (double f : freqs_) {
      if (!std::isfinite(f) || f < 0.0)
        fail(ErrorKind::domain,
             "frequency must be finite and >= 0, got " + detail::format_double(f));
    }
    for (double d : dists_) {
      if (!std::isfinite(d) || d <= 0.0)
        fail(ErrorKind::domain,
             "distance must be finite and > 0, got " + detail::format_double(d));
    }
  }

  const std::vector<Direction>& dirs() const noexcept { return dirs_; }
  const std::vector<double>& freqs() const noexcept { return freqs_; }
  const std::vector<double>& dists() const noexcept { return dists_; }

  std::size_t dir_count() const noexcept { return dirs_.size(); }
  std::size_t freq_count() const noexcept { return freqs_.size(); }
  /// Grid extent along distance; an empty list counts as the implicit 1 m.
  std::size_t dist_count() const noexcept {
    return dists_.empty() ? 1 : dists_.size();
  }
  double dist_at(std::size_t k) const { return dists_.empty() ? 1.0 : dists_[k]; }

  friend bool operator==(const Coordinates& a, const Coordinates& b) = default;

 private:
  std::vector<Direction> dirs_;
  std::vector<double> freqs_;
  std::vector<double> dists_;
};

/// Enforces the strict monotonicity required of model- and document-owned
/// coordinate lists.
inline void require_increasing(const Coordinates& c) {
  for (std::size_t i = 1; i < c.freqs().size(); ++i)
    if (!(c.freqs()[i - 1] < c.freqs()[i]))
      fail(ErrorKind::order, "frequencies must be strictly increasing");
  for (std::size_t i = 1; i < c.dists().size(); ++i)
    if (!(c.dists()[i - 1] < c.dists()[i]))
      fail(ErrorKind::order, "distances must be strictly increasing");
}

// ---------------------------------------------------------------------------
// DataGrid
// ---------------------------------------------------------------------------

/// A dense 3-D array of dB magnitudes indexed [direction][frequency][distance].
class DataGrid {
 public:
  DataGrid(std::size_t n_dirs, std::size_t n_freqs, std::size_t n_dists,
           std::vector<double> values)
      : n_dirs_(n_dirs), n_freqs_(n_freqs), n_dists_(n_dists),
        values_(std::move(values)) {
    if (values_.size() != n_dirs_ * n_freqs_ * n_dists_)
      fail(ErrorKind::shape,
           "grid has " + std::to_string(values_.size()) + " values, expected " +
               std::to_string(n_dirs_) + "x" + std::to_string(n_freqs_) + "x" +
               std::to_string(n_dists_));
    for (double v : values_)
      if (!std::isfinite(v))
        fail(ErrorKind::domain, "grid values must be finite");
  }

  std::size_t dir_count() const noexcept { return n_dirs_; }
  std::size_t freq_count() const noexcept { return n_freqs_; }
  std::size_t dist_count() const noexcept { return n_dists_; }
  std::size_t size() const noexcept { return values_.size(); }

  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * n_freqs_ + j) * n_dists_ + k];
  }

  const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const DataGrid& a, const DataGrid& b) = default;

 private:
  std::size_t n_dirs_;
  std::size_t n_freqs_;
  std::size_t n_dists_;
  std::vector<double> values_;
};

/// Shape check used at every site that pairs a grid with its coordinates.
inline void require_grid_matches(const Coordinates& coords, const DataGrid& grid) {
  if (grid.dir_count() != coords.dir_count() ||
      grid.freq_count() != coords.freq_count() ||
      grid.dist_count() != coords.dist_count())
    fail(ErrorKind::shape,
         "grid " + std::to_string(grid.dir_count()) + "x" +
             std::to_string(grid.freq_count()) + "x" +
             std::to_string(grid.dist_count()) + " does not match coordinates " +
             std::to_string(coords.dir_count()) + "x" +
             std::to_string(coords.freq_count()) + "x" +
             std::to_string(coords.dist_count()));
}

// ---------------------------------------------------------------------------
// Continuity
// ---------------------------------------------------------------------------

/// Whether a representation is continuous along direction, frequency and
/// distance. Fixed per model kind.
struct Continuity {
  bool direction = false;
  bool frequency = false;
  bool distance = false;

  friend bool operator==(const Continuity& a, const Continuity& b) = default;
};

// ---------------------------------------------------------------------------
// Coercion
// ---------------------------------------------------------------------------

struct CoercedScalar {
  std::size_t index;
  double value;
};

struct CoercedDirection {
  std::size_t index;
  Direction value;
};

/// Nearest available frequency by |value - f|; ties break toward the lower
/// value (equivalently the lower index for increasing lists).
inline CoercedScalar coerce_frequency(const Coordinates& coords, double f) {
  if (coords.freqs().empty())
    fail(ErrorKind::not_applicable, "frequency dimension not applicable");
  if (!(f >= 0.0) || !std::isfinite(f))
    fail(ErrorKind::domain, "queried frequency must be finite and >= 0");
  std::size_t best = 0;
  double best_dist = std::abs(coords.freqs()[0] - f);
  for (std::size_t i = 1; i < coords.freqs().size(); ++i) {
    const double d = std::abs(coords.freqs()[i] - f);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return {best, coords.freqs()[best]};
}

/// Nearest available distance; an empty distance list means the implicit
/// single distance of 1 m, returned for any query.
inline CoercedScalar coerce_distance(const Coordinates& coords, double d) {
  if (!(d > 0.0) || !std::isfinite(d))
    fail(ErrorKind::domain, "queried distance must be finite and > 0");
  if (coords.dists().empty()) return {0, 1.0};
  std::size_t best = 0;
  double best_dist = std::abs(coords.dists()[0] - d);
  for (std::size_t i = 1; i < coords.dists().size(); ++i) {
    const double dd = std::abs(coords.dists()[i] - d);
    if (dd < best_dist) {
      best = i;
      best_dist = dd;
    }
  }
  return {best, coords.dists()[best]};
}

/// Nearest available direction by great-circle angle; ties break toward the
/// lowest index.
inline CoercedDirection coerce_direction(const Coordinates& coords,
                                         const Direction& dir) {
  if (coords.dirs().empty())
    fail(ErrorKind::not_applicable, "direction dimension not applicable");
  std::size_t best = 0;
  double best_dist = angular_distance_rad(coords.dirs()[0], dir);
  for (std::size_t i = 1; i < coords.dirs().size(); ++i) {
    const double d = angular_distance_rad(coords.dirs()[i], dir);
    if (d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return {best, coords.dirs()[best]};
}

namespace detail {

// Resolve a queried frequency list against stored coordinates. An empty query
// selects every stored frequency.
inline std::pair<std::vector<std::size_t>, std::vector<double>> coerce_freq_list(
    const Coordinates& stored, const std::vector<double>& query) {
  std::vector<std::size_t> idx;
  std::vector<double> vals;
  if (query.empty()) {
    idx.resize(stored.freq_count());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    vals = stored.freqs();
  } else {
    idx.reserve(query.size());
    vals.reserve(query.size());
    for (double f : query) {
      const auto c = coerce_frequency(stored, f);
      idx.push_back(c.index);
      vals.push_back(c.value);
    }
  }
  return {std::move(idx), std::move(vals)};
}

// Resolve a queried distance list. An empty query means the implicit 1 m; the
// result list stays empty only when the stored list is empty too, so that the
// reported coordinates never misstate the distance actually used.
inline std::pair<std::vector<std::size_t>, std::vector<double>> coerce_dist_list(
    const Coordinates& stored, const std::vector<double>& query) {
  std::vector<std::size_t> idx;
  std::vector<double> vals;
  if (query.empty()) {
    const auto c = coerce_distance(stored, 1.0);
    idx.push_back(c.index);
    if (!stored.dists().empty()) vals.push_back(c.value);
  } else {
    idx.reserve(query.size());
    vals.reserve(query.size());
    for (double d : query) {
      const auto c = coerce_distance(stored, d);
      idx.push_back(c.index);
      vals.push_back(c.value);
    }
  }
  return {std::move(idx), std::move(vals)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Grid error metrics
// ---------------------------------------------------------------------------

inline void require_same_shape(const DataGrid& a, const DataGrid& b) {
  if (a.dir_count() != b.dir_count() || a.freq_count() != b.freq_count() ||
      a.dist_count() != b.dist_count())
    fail(ErrorKind::shape, "grids have different dimensions");
}

/// Root-mean-square of element-wise differences, in dB.
inline double grid_rms_error_db(const DataGrid& a, const DataGrid& b) {
  require_same_shape(a, b);
  if (a.size() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

/// Maximum absolute element-wise difference, in dB.
inline double grid_max_abs_error_db(const DataGrid& a, const DataGrid& b) {
  require_same_shape(a, b);
  double mx = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    mx = std::max(mx, std::abs(a.values()[i] - b.values()[i]));
  return mx;
}

// ---------------------------------------------------------------------------
// Directivity
// ---------------------------------------------------------------------------

/// Common query contract for every directivity representation.
///
/// get_data evaluates the model on the queried lattice and returns the values
/// together with the coordinates actually used: along discrete dimensions the
/// query is coerced to the nearest available coordinates and the coerced ones
/// are reported back; along continuous dimensions values are produced exactly
/// at the query (within the model's declared range). All implementations are
/// immutable after construction and safe for concurrent reads.
class Directivity {
 public:
  virtual ~Directivity() = default;

  const std::string& info() const noexcept { return info_; }
  const Continuity& continuity() const noexcept { return continuity_; }

  virtual std::pair<DataGrid, Coordinates> get_data(
      const Coordinates& query) const = 0;
  virtual Coordinates get_data_coords() const = 0;

  /// Lowest elevation at which output is considered reliable; rendering masks
  /// below it. Discrete representations have no mask.
  virtual double min_elev_deg() const noexcept { return -90.0; }

  /// Upper end of the declared frequency range for models continuous in
  /// frequency; nullopt for frequency-discrete models.
  virtual std::optional<double> continuous_freq_limit() const noexcept {
    return std::nullopt;
  }

 protected:
  Directivity(std::string info, Continuity continuity)
      : info_(std::move(info)), continuity_(continuity) {}
  Directivity(const Directivity&) = default;
  Directivity& operator=(const Directivity&) = default;
  Directivity(Directivity&&) = default;
  Directivity& operator=(Directivity&&) = default;

 private:
  std::string info_;
  Continuity continuity_;
};

}  // namespace oodir
