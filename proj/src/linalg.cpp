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

#include "irsnet/linalg.hpp"

#include <limits>

#include <fmt/format.h>

#include "irsnet/errors.hpp"

namespace irsnet {

PseudoInverse pseudo_inverse(const CMat& a, double rel_tol) {
  PseudoInverse out;
  out.matrix = CMat::Zero(a.cols(), a.rows());
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  out.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (smax == 0.0) return out;
  const double cutoff = rel_tol * smax;
  RVec inv = RVec::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      inv(i) = 1.0 / sv(i);
      ++out.rank;
    }
  }
  out.matrix = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  return out;
}

CMat full_row_rank_pinv(const CMat& h, double rel_tol) {
  if (h.rows() == 0) throw std::invalid_argument("empty channel matrix");
  if (h.rows() > h.cols()) {
    throw RankDeficiencyError(
        fmt::format("{}x{} matrix cannot have full row rank", h.rows(), h.cols()),
        std::numeric_limits<double>::infinity());
  }
  PseudoInverse p = pseudo_inverse(h, rel_tol);
  if (p.rank < h.rows()) {
    throw RankDeficiencyError(
        fmt::format("channel matrix is rank deficient (rank {} of {}, condition {:.3e})",
                    p.rank, h.rows(), p.condition),
        p.condition);
  }
  return std::move(p.matrix);
}

double spectral_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace irsnet
