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

#ifndef IRSNET_POWER_HPP_
#define IRSNET_POWER_HPP_

#include "irsnet/linalg.hpp"

namespace irsnet {

struct EigenProfile {
  RVec lambdas;  // eigenvalues of H H^H, descending
  int u = 0;     // count above kRankTol * lambdas(0)
};

EigenProfile eig_profile(const CMat& H);

// Water level (1/u) (P_max - sigma2 (2^R_min - 2) sum_k 1/lambda_k) over the
// u significant eigenvalues. Throws DegenerateChannelError when u = 0.
double water_level(const EigenProfile& profile, double P_max, double sigma2, double R_min);

// Eigen-indexed closed form max(0, w lambda_j - sigma2) + sigma2 (2^R_min - 1) / lambda_j
// for the u significant eigen-directions, with w from water_level. Kept for
// comparison; it does not map powers to users.
RVec eigen_closed_form(const EigenProfile& profile, double P_max, double sigma2, double R_min);

// sigma2 (2^R_min - 1): the smallest power meeting the rate floor.
double qos_floor(double sigma2, double R_min);

// sum_k log2(1 + p_k / sigma2).
double rate_objective(const RVec& p, double sigma2);

// Maximizes sum_k log2(1 + p_k / sigma2) subject to p_k >= qos_floor and
// tr(H^+ diag(p) H^{+H}) <= P_max, for the users stacked in H. The solution
// is p_k = max(floor, w g_k - sigma2) with g_k = 1 / [(H H^H)^{-1}]_kk and w
// found exactly from the piecewise-linear budget equation.
//
// Throws RankDeficiencyError for rank-deficient H and QosInfeasibleError when
// the floors alone exceed P_max.
RVec allocate_power(const CMat& H, double P_max, double sigma2, double R_min);

// Same problem solved by bisection on the water level, evaluating the budget
// with transmit_power at every step. Used as a reference.
RVec oracle_allocate(const CMat& H, double P_max, double sigma2, double R_min);

}  // namespace irsnet

#endif  // IRSNET_POWER_HPP_
