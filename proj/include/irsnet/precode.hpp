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

#ifndef IRSNET_PRECODE_HPP_
#define IRSNET_PRECODE_HPP_

#include <map>
#include <vector>

#include "irsnet/linalg.hpp"

namespace irsnet {

struct Precoder {
  CMat W;         // M x K_s, column k is w_k
  CMat source_H;  // K_s x M
};

// Per-BS powers: per_bs[s] maps user index to p^s_k in Watts.
struct PowerAllocation {
  std::vector<std::map<int, double>> per_bs;

  explicit PowerAllocation(int num_bs = 0) : per_bs(num_bs) {}
  double total() const;
};

// W = H^+. Throws RankDeficiencyError when H lacks full row rank.
Precoder zf_precoder(const CMat& H);

// General SINR of row k of H under precoder W and powers p.
double sinr(const CMat& H, const CMat& W, const RVec& p, int k, double sigma2);

double rate(double gamma);

// tr(H^+ diag(p) H^{+H}).
double transmit_power(const CMat& H, const RVec& p);

// Same quantity from a precomputed pseudo-inverse.
double transmit_power_from_pinv(const CMat& H_pinv, const RVec& p);

// Sum over every allocated pair of log2(1 + p / sigma2).
double sum_rate(const PowerAllocation& powers, double sigma2);

}  // namespace irsnet

#endif  // IRSNET_PRECODE_HPP_
