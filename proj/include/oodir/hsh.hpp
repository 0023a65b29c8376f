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
#include "oodir/sh.hpp"

namespace oodir {

// ---------------------------------------------------------------------------
// Hyperspherical harmonic basis
//
//   Z_nl^m(az, el, psi) = N(n,l) sin^l(psi) C_{n-l}^{l+1}(cos psi) Y_l^m(az, el)
//
// orthonormal over the 3-sphere with its uniform measure
// sin(colat) d(colat) d(az) sin^2(psi) d(psi). Frequency maps linearly onto
// the hyperangle psi in [0, pi].
// ---------------------------------------------------------------------------

/// Index triple with 0 <= l <= n and |m| <= l.
struct HshIndex {
  int n;
  int l;
  int m;
};

/// Gegenbauer polynomial C_nu^alpha(x) by the standard three-term recurrence
///   C_0 = 1,  C_1 = 2 alpha x,
///   nu C_nu = 2 x (nu + alpha - 1) C_{nu-1} - (nu + 2 alpha - 2) C_{nu-2}.
inline double gegenbauer(int nu, double alpha, double x) {
  if (nu < 0) fail(ErrorKind::domain, "gegenbauer requires nu >= 0");
  if (!(alpha > 0.0)) fail(ErrorKind::domain, "gegenbauer requires alpha > 0");
  if (!(std::abs(x) <= 1.0)) fail(ErrorKind::domain, "gegenbauer requires |x| <= 1");
  if (nu == 0) return 1.0;
  double cm2 = 1.0;
  double cm1 = 2.0 * alpha * x;
  for (int k = 2; k <= nu; ++k) {
    const double ck =
        (2.0 * x * (k + alpha - 1.0) * cm1 - (k + 2.0 * alpha - 2.0) * cm2) / k;
    cm2 = cm1;
    cm1 = ck;
  }
  return cm1;
}

/// Normalization factor making the Z_nl^m family orthonormal over the
/// 3-sphere:
///
///   N(n,l) = 2^l l! sqrt( 2 (n+1) (n-l)! / (pi (n+l+1)!) )
///
/// the unique positive constant for which the weighted Gegenbauer norm
///   int_0^pi sin^{2l+2}(psi) [C_{n-l}^{l+1}(cos psi)]^2 dpsi
/// equals 1/N^2 (see the quadrature tests, which verify this numerically
/// rather than trusting the closed form).
inline double hsh_normalization(int n, int l) {
  if (l < 0 || l > n)
    fail(ErrorKind::domain, "hsh_normalization requires 0 <= l <= n");
  double two_l_lfact = 1.0;  // 2^l l!
  for (int k = 1; k <= l; ++k) two_l_lfact *= 2.0 * k;
  double ratio = 1.0;  // (n+l+1)!/(n-l)!
  for (int k = n - l + 1; k <= n + l + 1; ++k) ratio *= k;
  return two_l_lfact * std::sqrt(2.0 * (n + 1) / (detail::kPi * ratio));
}

/// Linear map of frequency onto the hyperangle: psi = pi f / maxFreq.
/// Frequency is a continuous dimension, so values outside the declared range
/// are an error rather than coerced.
inline double freq_to_psi(double f, double max_freq) {
  if (!(max_freq > 0.0) || !std::isfinite(max_freq))
    fail(ErrorKind::domain, "maxFreq must be finite and > 0");
  if (!(f >= 0.0) || !(f <= max_freq))
    fail(ErrorKind::range, "frequency " + detail::format_double(f) +
                               " outside [0, " + detail::format_double(max_freq) +
                               "]");
  return detail::kPi * f / max_freq;
}

/// Hyperspherical harmonic Z_nl^m at (direction, psi).
inline double hsh_eval_basis(HshIndex idx, const Direction& dir, double psi) {
  if (idx.n < 0 || idx.l < 0 || idx.l > idx.n || std::abs(idx.m) > idx.l)
    fail(ErrorKind::domain,
         "hyperspherical harmonic index requires 0 <= l <= n, |m| <= l");
  if (!(psi >= 0.0 && psi <= detail::kPi))
    fail(ErrorKind::domain, "psi must lie in [0, pi]");
  const double radial = hsh_normalization(idx.n, idx.l) *
                        std::pow(std::sin(psi), idx.l) *
                        gegenbauer(idx.n - idx.l, idx.l + 1.0, std::cos(psi));
  return radial * sh_eval_basis({idx.l, idx.m}, dir);
}

/// Number of basis functions with n <= nmax, l <= n, |m| <= min(l, mmax).
inline int hsh_basis_count(int nmax, int mmax) {
  if (nmax < 0 || mmax < 0)
    fail(ErrorKind::domain, "truncation requires nmax >= 0 and mmax >= 0");
  int count = 0;
  for (int n = 0; n <= nmax; ++n)
    for (int l = 0; l <= n; ++l) count += 2 * std::min(l, mmax) + 1;
  return count;
}

/// Basis ordering: n ascending, l ascending, m from -min(l,mmax) to +min(l,mmax).
inline std::vector<HshIndex> hsh_basis_indices(int nmax, int mmax) {
  std::vector<HshIndex> out;
  out.reserve(static_cast<std::size_t>(hsh_basis_count(nmax, mmax)));
  for (int n = 0; n <= nmax; ++n)
    for (int l = 0; l <= n; ++l) {
      const int mcap = std::min(l, mmax);
      for (int m = -mcap; m <= mcap; ++m) out.push_back({n, l, m});
    }
  return out;
}

namespace detail {

// Rows indexed by (dir_i, freq_j) pairs, direction-major.
inline Eigen::MatrixXd hsh_design_matrix(const std::vector<Direction>& dirs,
                                         const std::vector<double>& freqs,
                                         double max_freq, int nmax, int mmax) {
  const auto basis = hsh_basis_indices(nmax, mmax);
  Eigen::MatrixXd A(static_cast<Eigen::Index>(dirs.size() * freqs.size()),
                    static_cast<Eigen::Index>(basis.size()));
  std::vector<double> psi(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j)
    psi[j] = freq_to_psi(freqs[j], max_freq);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = 0; j < freqs.size(); ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i * freqs.size() + j);
      for (std::size_t b = 0; b < basis.size(); ++b)
        A(row, static_cast<Eigen::Index>(b)) =
            hsh_eval_basis(basis[b], dirs[i], psi[j]);
    }
  return A;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// HSH model
// ---------------------------------------------------------------------------

/// Hyperspherical harmonic model: continuous over direction and frequency,
/// discrete only over distance. One coefficient vector per distance.
class HshModel final : public Directivity {
 public:
  /// coeffs is [n_basis x n_dists] (one column when dists is empty).
  HshModel(std::string info, int nmax, int mmax, double max_freq,
           double min_elev_deg, std::vector<double> dists, Eigen::MatrixXd coeffs)
      : Directivity(std::move(info), Continuity{true, true, false}),
        nmax_(nmax), mmax_(mmax), max_freq_(max_freq), min_elev_(min_elev_deg),
        coords_({}, {}, std::move(dists)), coeffs_(std::move(coeffs)) {
    if (!(max_freq_ > 0.0) || !std::isfinite(max_freq_))
      fail(ErrorKind::domain, "maxFreq must be finite and > 0");
    if (!(min_elev_ >= -90.0 && min_elev_ <= 90.0))
      fail(ErrorKind::domain, "minElev must lie in [-90, 90]");
    require_increasing(coords_);
    if (coeffs_.rows() != hsh_basis_count(nmax_, mmax_) ||
        coeffs_.cols() != static_cast<Eigen::Index>(coords_.dist_count()))
      fail(ErrorKind::shape,
           "coefficient array does not match basis count and distances");
  }

  int nmax() const noexcept { return nmax_; }
  int mmax() const noexcept { return mmax_; }
  double max_freq() const noexcept { return max_freq_; }
  double min_elev_deg() const noexcept override { return min_elev_; }
  const std::vector<double>& dists() const noexcept { return coords_.dists(); }
  const Eigen::MatrixXd& coeffs() const noexcept { return coeffs_; }

  std::optional<double> continuous_freq_limit() const noexcept override {
    return max_freq_;
  }

  Coordinates get_data_coords() const override { return coords_; }

  /// Directions and frequencies are evaluated exactly; only distance coerces.
  std::pair<DataGrid, Coordinates> get_data(const Coordinates& query) const override {
    if (query.dirs().empty() || query.freqs().empty())
      fail(ErrorKind::domain, "HSH model is continuous over direction and "
                              "frequency; query directions and frequencies "
                              "required");
    auto [dist_idx, dist_vals] = detail::coerce_dist_list(coords_, query.dists());

    const Eigen::MatrixXd A = detail::hsh_design_matrix(
        query.dirs(), query.freqs(), max_freq_, nmax_, mmax_);
    const std::size_t nd = query.dirs().size();
    const std::size_t nf = query.freqs().size();
    const std::size_t nk = dist_idx.size();

    std::vector<double> out(nd * nf * nk);
    for (std::size_t k = 0; k < nk; ++k) {
      const Eigen::VectorXd vals =
          A * coeffs_.col(static_cast<Eigen::Index>(dist_idx[k]));
      for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nf; ++j)
          out[(i * nf + j) * nk + k] = vals(static_cast<Eigen::Index>(i * nf + j));
    }
    DataGrid grid(nd, nf, nk, std::move(out));
    Coordinates effective(query.dirs(), query.freqs(), std::move(dist_vals));
    return {std::move(grid), std::move(effective)};
  }

 private:
  int nmax_;
  int mmax_;
  double max_freq_;
  double min_elev_;
  Coordinates coords_;     // dirs and freqs empty (continuous); dists retained
  Eigen::MatrixXd coeffs_; // [n_basis x n_dists]
};

/// Joint least-squares HSH fit over all (direction, frequency) samples, one
/// independent system per distance. maxFreq defaults to the highest measured
/// frequency; measurements above an explicit maxFreq are a range error.
inline HshModel hsh_fit(const RawDirectivity& raw, int nmax, int mmax,
                        std::optional<double> max_freq = std::nullopt,
                        double min_elev_deg = -90.0,
                        std::optional<std::string> info = std::nullopt) {
  const auto& coords = raw.coords();
  const double fmax = max_freq.value_or(coords.freqs().back());
  const std::size_t nd = coords.dir_count();
  const std::size_t nf = coords.freq_count();
  const std::size_t nk = coords.dist_count();

  const Eigen::MatrixXd A =
      detail::hsh_design_matrix(coords.dirs(), coords.freqs(), fmax, nmax, mmax);
  Eigen::MatrixXd B(static_cast<Eigen::Index>(nd * nf),
                    static_cast<Eigen::Index>(nk));
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < nf; ++j)
      for (std::size_t k = 0; k < nk; ++k)
        B(static_cast<Eigen::Index>(i * nf + j), static_cast<Eigen::Index>(k)) =
            raw.grid().at(i, j, k);

  Eigen::MatrixXd X = min_norm_lstsq(A, B);
  return HshModel(info.value_or(raw.info()), nmax, mmax, fmax, min_elev_deg,
                  coords.dists(), std::move(X));
}

}  // namespace oodir
