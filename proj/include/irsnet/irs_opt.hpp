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

#ifndef IRSNET_IRS_OPT_HPP_
#define IRSNET_IRS_OPT_HPP_

#include <vector>

#include "irsnet/linalg.hpp"
#include "irsnet/reflection.hpp"

namespace irsnet {

// Minimum transmit power tr((H_r Phi G)^+ P (H_r Phi G)^{+H}) for the users
// stacked in H_r (K x N) with powers p. Throws RankDeficiencyError when the
// cascaded channel lacks full row rank.
double f1(const ReflectionState& phi, const CMat& H_r, const RVec& p, const CMat& G);

// Quadratic surrogate y^H B y with B = K^H K and K = (H_tilde^+)^T kron G^+,
// where H_tilde^+ = H_r^+ sqrt(P). It equals f1 when H_r is square and
// invertible and G has full row rank; with fewer users than elements it is
// an upper bound on f1 whenever G has full row rank.
//
// Only the N x N block of B on the diagonal slots n * N + n is needed for a
// diagonal Phi; it is (H_tilde^+ H_tilde^{+H})^T o (G^{+H} G^+).
struct SfpProblem {
  CMat h_tilde_pinv;  // N x K
  CMat g_pinv;        // M x N
  CMat support_gram;  // N x N Hermitian PSD block of B
  double lambda_max = 0.0;

  // y^H B y evaluated on the support vector z = diag(Phi^{-1}).
  double objective(const CVec& z) const;
  double objective(const ReflectionState& phi) const { return objective(phi.support()); }

  // Majorizer f2(y | y_t) with C = lambda_max I, on support vectors.
  double majorizer(const CVec& z, const CVec& z_t) const;

  // Dense N^2 x N^2 B. Throws OracleTooLargeError for N > 64.
  CMat explicit_matrix() const;
};

SfpProblem build_sfp(const CMat& H_r, const RVec& p, const CMat& G);

// One majorization-minimization update. Elements whose descent direction
// vanishes keep their previous phase.
ReflectionState sfp_step(const ReflectionState& current, const SfpProblem& sfp);

// Nearest grid index to angle theta (any real), by circular distance with
// ties resolved toward the smaller index.
int nearest_grid_index(double theta, int levels);

struct IrsResult {
  ReflectionState state;
  std::vector<double> f1_trace;  // f1 of the initial state, then of every iterate
  int iterations = 0;
  bool converged = false;
};

// Repeats sfp_step from `initial` until ||Phi_t - Phi_{t-1}||_F^2 < tol or
// T_sfp steps have been taken.
IrsResult optimize_irs(const CMat& H_r, const CMat& G, const RVec& p,
                       const ReflectionState& initial, int T_sfp, double tol);

// Admits f1_value <= P_max up to a relative rounding allowance of 1e-9.
bool feasibility_check(double f1_value, double P_max);

}  // namespace irsnet

#endif  // IRSNET_IRS_OPT_HPP_
