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
#include <limits>

#include "oodir/core.hpp"

namespace oodir {

/// Minimum-norm least-squares solve: X minimizes ||A X - B|| column-wise and,
/// among minimizers, has minimum norm (the pseudoinverse solution). Singular
/// values below max(p, q) * eps * sigma_max are treated as zero, so
/// rank-deficient systems need no regularization.
inline Eigen::MatrixXd min_norm_lstsq(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& B) {
  if (A.rows() < 1 || A.cols() < 1)
    fail(ErrorKind::domain, "least-squares system must be at least 1x1");
  if (B.rows() != A.rows())
    fail(ErrorKind::shape, "right-hand side has " + std::to_string(B.rows()) +
                               " rows, expected " + std::to_string(A.rows()));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double tol = static_cast<double>(std::max(A.rows(), A.cols())) *
                     std::numeric_limits<double>::epsilon() *
                     (sigma.size() > 0 ? sigma(0) : 0.0);

  Eigen::MatrixXd UtB = svd.matrixU().transpose() * B;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol)
      UtB.row(i) /= sigma(i);
    else
      UtB.row(i).setZero();
  }
  return svd.matrixV() * UtB;
}

}  // namespace oodir
