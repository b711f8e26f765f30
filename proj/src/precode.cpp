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

#include "irsnet/precode.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace irsnet {

double PowerAllocation::total() const {
  double t = 0.0;
  for (const auto& bs : per_bs) {
    for (const auto& [k, p] : bs) t += p;
  }
  return t;
}

Precoder zf_precoder(const CMat& H) { return {full_row_rank_pinv(H), H}; }

double sinr(const CMat& H, const CMat& W, const RVec& p, int k, double sigma2) {
  if (H.cols() != W.rows() || W.cols() != p.size() || k < 0 || k >= H.rows()) {
    throw std::invalid_argument(fmt::format("sinr dimension mismatch: H {}x{}, W {}x{}, p {}",
                                            H.rows(), H.cols(), W.rows(), W.cols(), p.size()));
  }
  const CRow g = H.row(k) * W;
  double interference = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    if (j != k) interference += p(j) * std::norm(g(j));
  }
  return p(k) * std::norm(g(k)) / (interference + sigma2);
}

double rate(double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("SINR must be nonnegative");
  return std::log2(1.0 + gamma);
}

double transmit_power_from_pinv(const CMat& H_pinv, const RVec& p) {
  if (H_pinv.cols() != p.size()) throw std::invalid_argument("power vector size mismatch");
  return (H_pinv.colwise().squaredNorm().transpose().array() * p.array()).sum();
}

double transmit_power(const CMat& H, const RVec& p) {
  return transmit_power_from_pinv(full_row_rank_pinv(H), p);
}

double sum_rate(const PowerAllocation& powers, double sigma2) {
  double total = 0.0;
  for (const auto& bs : powers.per_bs) {
    for (const auto& [k, p] : bs) total += std::log2(1.0 + p / sigma2);
  }
  return total;
}

}  // namespace irsnet
