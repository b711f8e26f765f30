// Copyright 2026 The irsnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IRSNET_LINALG_HPP_
#define IRSNET_LINALG_HPP_

#include <complex>

#include <Eigen/Dense>

namespace irsnet {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;
using RVec = Eigen::VectorXd;

// Relative singular-value cutoff shared by every rank decision in the library.
inline constexpr double kRankTol = 1e-10;

struct PseudoInverse {
  CMat matrix;
  int rank = 0;
  double condition = 0.0;  // sigma_max / sigma_min over all min(rows, cols) values
};

// Truncated-SVD Moore-Penrose inverse; singular values below
// rel_tol * sigma_max are treated as zero. Never throws.
PseudoInverse pseudo_inverse(const CMat& a, double rel_tol = kRankTol);

// Pseudo-inverse of a wide matrix that must have full row rank. Throws
// RankDeficiencyError (carrying the condition estimate) otherwise.
CMat full_row_rank_pinv(const CMat& h, double rel_tol = kRankTol);

double spectral_norm(const CMat& a);

}  // namespace irsnet

#endif  // IRSNET_LINALG_HPP_
