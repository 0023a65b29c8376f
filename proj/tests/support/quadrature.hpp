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

// Test-only numerical oracles: quadrature rules for orthonormality checks and
// quasi-uniform direction sets for fitting tests. Kept independent of the
// library's evaluation paths (only core types are used).

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "oodir/core.hpp"

namespace oodir::testing {

inline constexpr double kTestPi = 3.14159265358979323846;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree <= 2n-1.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kTestPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {std::move(x), std::move(w)};
}

struct SphereQuadrature {
  std::vector<Direction> dirs;
  std::vector<double> weights;  // sum to 4*pi
};

/// Product rule over the sphere: Gauss-Legendre in cos(colatitude) times a
/// uniform azimuth grid. Integrates spherical-harmonic products exactly when
/// n_colat and n_azim exceed the product degree.
inline SphereQuadrature sphere_quadrature(int n_colat, int n_azim) {
  auto [x, w] = gauss_legendre(n_colat);
  SphereQuadrature q;
  q.dirs.reserve(static_cast<std::size_t>(n_colat) * n_azim);
  q.weights.reserve(q.dirs.capacity());
  const double daz = 360.0 / n_azim;
  const double w_az = 2.0 * kTestPi / n_azim;
  for (int i = 0; i < n_colat; ++i) {
    const double el = 90.0 - std::acos(x[i]) * 180.0 / kTestPi;
    for (int j = 0; j < n_azim; ++j) {
      q.dirs.emplace_back(j * daz, el);
      q.weights.push_back(w[i] * w_az);
    }
  }
  return q;
}

struct PsiQuadrature {
  std::vector<double> psi;
  std::vector<double> weights;
};

/// Gauss-Chebyshev rule of the second kind mapped to psi in [0, pi], with the
/// sin^2(psi) hyperangle measure folded into the weights:
///   int_0^pi f(psi) sin^2(psi) dpsi ~= sum w_i f(psi_i).
inline PsiQuadrature psi_quadrature_sin2(int n) {
  PsiQuadrature q;
  q.psi.resize(n);
  q.weights.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double t = i * kTestPi / (n + 1);
    q.psi[i - 1] = t;
    const double s = std::sin(t);
    q.weights[i - 1] = kTestPi / (n + 1) * s * s;
  }
  return q;
}

/// Quasi-uniform direction set from the Fibonacci (golden-angle) lattice.
inline std::vector<Direction> fibonacci_directions(int n) {
  std::vector<Direction> dirs;
  dirs.reserve(n);
  const double golden = kTestPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double el = std::asin(z) * 180.0 / kTestPi;
    double az = std::fmod(k * golden * 180.0 / kTestPi, 360.0);
    if (az < 0.0) az += 360.0;
    dirs.emplace_back(az, el);
  }
  return dirs;
}

}  // namespace oodir::testing
