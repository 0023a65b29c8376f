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

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oodir/core.hpp"
#include "oodir/lstsq.hpp"
#include "oodir/raw.hpp"

namespace oodir {

// ---------------------------------------------------------------------------
// Real spherical harmonic basis
//
// Convention: fully orthonormal real harmonics over the unit sphere with the
// uniform measure, Condon-Shortley phase excluded ("N3D"-style):
//
//   Y_l^m = K(l,|m|) P_l^|m|(cos colat) * { sqrt(2) cos(m az)   m > 0
//                                         { 1                   m = 0
//                                         { sqrt(2) sin(|m| az) m < 0
//
//   K(l,m) = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!)
// ---------------------------------------------------------------------------

/// Degree/order pair with |m| <= l.
struct ShIndex {
  int l;
  int m;
};

/// Associated Legendre function P_l^m(x), Condon-Shortley phase excluded,
/// by upward recurrence in l (stable for this sign convention).
inline double assoc_legendre(int l, int m, double x) {
  if (m < 0 || m > l)
    fail(ErrorKind::domain, "assoc_legendre requires 0 <= m <= l");
  if (!(std::abs(x) <= 1.0))
    fail(ErrorKind::domain, "assoc_legendre requires |x| <= 1");

  // P_m^m = (2m-1)!! (1-x^2)^{m/2}
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double odd = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= odd * somx2;
      odd += 2.0;
    }
  }
  if (l == m) return pmm;

  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;

  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

namespace detail {

// K(l,m) with the factorial ratio accumulated as a running product.
inline double sh_norm_factor(int l, int m) {
  double ratio = 1.0;  // (l+m)!/(l-m)!
  for (int k = l - m + 1; k <= l + m; ++k) ratio *= k;
  return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) / ratio);
}

}  // namespace detail

/// Real orthonormal spherical harmonic Y_l^m at a direction.
inline double sh_eval_basis(ShIndex idx, const Direction& dir) {
  if (idx.l < 0 || std::abs(idx.m) > idx.l)
    fail(ErrorKind::domain, "spherical harmonic index requires |m| <= l, l >= 0");
  const int am = std::abs(idx.m);
  const double x = std::sin(detail::deg2rad(dir.elevation_deg()));  // cos(colat)
  const double p = assoc_legendre(idx.l, am, x);
  const double k = detail::sh_norm_factor(idx.l, am);
  if (idx.m == 0) return k * p;
  const double sqrt2 = std::sqrt(2.0);
  const double az = dir.azimuth_rad();
  return idx.m > 0 ? sqrt2 * k * p * std::cos(am * az)
                   : sqrt2 * k * p * std::sin(am * az);
}

/// Number of basis functions with l <= lmax and |m| <= min(l, mmax).
inline int sh_basis_count(int lmax, int mmax) {
  if (lmax < 0 || mmax < 0 || mmax > lmax)
    fail(ErrorKind::domain, "truncation requires 0 <= mmax <= lmax");
  int n = 0;
  for (int l = 0; l <= lmax; ++l) n += 2 * std::min(l, mmax) + 1;
  return n;
}

/// Basis ordering used everywhere: l ascending, m from -min(l,mmax) to
/// +min(l,mmax).
inline std::vector<ShIndex> sh_basis_indices(int lmax, int mmax) {
  std::vector<ShIndex> out;
  out.reserve(static_cast<std::size_t>(sh_basis_count(lmax, mmax)));
  for (int l = 0; l <= lmax; ++l) {
    const int mcap = std::min(l, mmax);
    for (int m = -mcap; m <= mcap; ++m) out.push_back({l, m});
  }
  return out;
}

/// Row i, column j holds basis function j evaluated at direction i.
inline Eigen::MatrixXd sh_design_matrix(const std::vector<Direction>& dirs,
                                        int lmax, int mmax) {
  if (dirs.empty()) fail(ErrorKind::domain, "design matrix needs directions");
  const auto basis = sh_basis_indices(lmax, mmax);
  Eigen::MatrixXd A(static_cast<Eigen::Index>(dirs.size()),
                    static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sh_eval_basis(basis[j], dirs[i]);
  return A;
}

// ---------------------------------------------------------------------------
// SH model
// ---------------------------------------------------------------------------

/// Least-squares-fitted spherical harmonic model: continuous over direction,
/// discrete over frequency and distance. Coefficients form one slab per
/// (frequency, distance) pair.
class ShModel final : public Directivity {
 public:
  /// coeffs is [n_basis x (n_freqs * n_dists)], column index j * n_dists + k.
  ShModel(std::string info, int lmax, int mmax, double min_elev_deg,
          Coordinates coords, Eigen::MatrixXd coeffs)
      : Directivity(std::move(info), Continuity{true, false, false}),
        lmax_(lmax), mmax_(mmax), min_elev_(min_elev_deg),
        coords_(std::move(coords)), coeffs_(std::move(coeffs)) {
    const int nb = sh_basis_count(lmax_, mmax_);
    if (!(min_elev_ >= -90.0 && min_elev_ <= 90.0))
      fail(ErrorKind::domain, "minElev must lie in [-90, 90]");
    if (!coords_.dirs().empty())
      fail(ErrorKind::shape, "SH model coordinates must have no directions");
    if (coords_.freqs().empty())
      fail(ErrorKind::domain, "SH model requires at least one frequency");
    require_increasing(coords_);
    if (coeffs_.rows() != nb ||
        coeffs_.cols() != static_cast<Eigen::Index>(coords_.freq_count() *
                                                    coords_.dist_count()))
      fail(ErrorKind::shape, "coefficient array does not match basis count and "
                             "retained coordinates");
  }

  int lmax() const noexcept { return lmax_; }
  int mmax() const noexcept { return mmax_; }
  double min_elev_deg() const noexcept override { return min_elev_; }
  const Coordinates& coords() const noexcept { return coords_; }
  const Eigen::MatrixXd& coeffs() const noexcept { return coeffs_; }

  double coeff(std::size_t basis, std::size_t freq, std::size_t dist) const {
    return coeffs_(static_cast<Eigen::Index>(basis),
                   static_cast<Eigen::Index>(freq * coords_.dist_count() + dist));
  }

  Coordinates get_data_coords() const override { return coords_; }

  /// Directions are evaluated exactly from the basis expansion (including
  /// below minElev; masking is a rendering concern). Frequencies and
  /// distances coerce to the stored ones.
  std::pair<DataGrid, Coordinates> get_data(const Coordinates& query) const override {
    if (query.dirs().empty())
      fail(ErrorKind::domain,
           "SH model is continuous over direction; query directions required");
    auto [freq_idx, freq_vals] = detail::coerce_freq_list(coords_, query.freqs());
    auto [dist_idx, dist_vals] = detail::coerce_dist_list(coords_, query.dists());

    const Eigen::MatrixXd A = sh_design_matrix(query.dirs(), lmax_, mmax_);
    const std::size_t nd = query.dirs().size();
    const std::size_t nf = freq_idx.size();
    const std::size_t nk = dist_idx.size();

    std::vector<double> out(nd * nf * nk);
    for (std::size_t j = 0; j < nf; ++j) {
      for (std::size_t k = 0; k < nk; ++k) {
        const Eigen::Index slab = static_cast<Eigen::Index>(
            freq_idx[j] * coords_.dist_count() + dist_idx[k]);
        const Eigen::VectorXd vals = A * coeffs_.col(slab);
        for (std::size_t i = 0; i < nd; ++i)
          out[(i * nf + j) * nk + k] = vals(static_cast<Eigen::Index>(i));
      }
    }
    DataGrid grid(nd, nf, nk, std::move(out));
    Coordinates effective(query.dirs(), std::move(freq_vals), std::move(dist_vals));
    return {std::move(grid), std::move(effective)};
  }

 private:
  int lmax_;
  int mmax_;
  double min_elev_;
  Coordinates coords_;     // dirs empty; freqs/dists retained from the source
  Eigen::MatrixXd coeffs_; // [n_basis x (n_freqs * n_dists)]
};

/// Least-squares SH fit, one independent system per (frequency, distance)
/// slab, no regularization; rank deficiency is absorbed by the minimum-norm
/// rule. All measured directions participate, including those below minElev,
/// which only documents the trustworthy range.
inline ShModel sh_fit(const RawDirectivity& raw, int lmax, int mmax,
                      double min_elev_deg = -90.0,
                      std::optional<std::string> info = std::nullopt) {
  const auto& coords = raw.coords();
  const std::size_t nd = coords.dir_count();
  const std::size_t n_slabs = coords.freq_count() * coords.dist_count();

  const Eigen::MatrixXd A = sh_design_matrix(coords.dirs(), lmax, mmax);
  Eigen::MatrixXd B(static_cast<Eigen::Index>(nd),
                    static_cast<Eigen::Index>(n_slabs));
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < coords.freq_count(); ++j)
      for (std::size_t k = 0; k < coords.dist_count(); ++k)
        B(static_cast<Eigen::Index>(i),
          static_cast<Eigen::Index>(j * coords.dist_count() + k)) =
            raw.grid().at(i, j, k);

  Eigen::MatrixXd X = min_norm_lstsq(A, B);
  return ShModel(info.value_or(raw.info()), lmax, mmax, min_elev_deg,
                 Coordinates({}, coords.freqs(), coords.dists()), std::move(X));
}

/// RMS dB error of a model against the raw data it was fitted from, evaluated
/// on the training lattice.
inline double training_residual_rms_db(const Directivity& model,
                                       const RawDirectivity& raw) {
  const auto [grid, coords] = model.get_data(raw.coords());
  return grid_rms_error_db(raw.grid(), grid);
}

}  // namespace oodir
