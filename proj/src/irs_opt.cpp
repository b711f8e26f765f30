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

#include "irsnet/irs_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "irsnet/errors.hpp"
#include "irsnet/precode.hpp"

namespace irsnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxExplicitN = 64;
// |d_n| at or below this fraction of lambda_max counts as a zero direction.
constexpr double kZeroDirection = 1e-14;

void check_dims(const CMat& H_r, const RVec& p, const CMat& G) {
  if (H_r.rows() != p.size() || H_r.cols() != G.rows()) {
    throw std::invalid_argument(fmt::format("IRS problem dimension mismatch: H_r {}x{}, p {}, G {}x{}",
                                            H_r.rows(), H_r.cols(), p.size(), G.rows(), G.cols()));
  }
  if ((p.array() < 0.0).any()) throw std::invalid_argument("powers must be nonnegative");
}

}  // namespace

double f1(const ReflectionState& phi, const CMat& H_r, const RVec& p, const CMat& G) {
  check_dims(H_r, p, G);
  if (phi.size() != H_r.cols()) throw std::invalid_argument("Phi size does not match N");
  const CMat H = H_r * phi.coefficients().asDiagonal() * G;
  return transmit_power(H, p);
}

double SfpProblem::objective(const CVec& z) const {
  return std::real(z.dot(support_gram * z));
}

double SfpProblem::majorizer(const CVec& z, const CVec& z_t) const {
  const CVec c_minus_b_zt = lambda_max * z_t - support_gram * z_t;
  return lambda_max * z.squaredNorm() - 2.0 * std::real(z.dot(c_minus_b_zt)) +
         std::real(z_t.dot(c_minus_b_zt));
}

CMat SfpProblem::explicit_matrix() const {
  const Eigen::Index n = g_pinv.cols();
  if (n > kMaxExplicitN) {
    throw OracleTooLargeError(fmt::format("explicit B needs N <= {}, got {}", kMaxExplicitN, n));
  }
  const CMat a = h_tilde_pinv.transpose();  // K x N
  const CMat& g = g_pinv;                   // M x N
  CMat kron(a.rows() * g.rows(), a.cols() * g.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      kron.block(i * g.rows(), j * g.cols(), g.rows(), g.cols()) = a(i, j) * g;
    }
  }
  return kron.adjoint() * kron;
}

SfpProblem build_sfp(const CMat& H_r, const RVec& p, const CMat& G) {
  check_dims(H_r, p, G);
  SfpProblem sfp;
  sfp.h_tilde_pinv = full_row_rank_pinv(H_r) * p.cwiseSqrt().asDiagonal();
  sfp.g_pinv = pseudo_inverse(G).matrix;
  const CMat a = sfp.h_tilde_pinv * sfp.h_tilde_pinv.adjoint();
  const CMat g = sfp.g_pinv.adjoint() * sfp.g_pinv;
  sfp.support_gram = a.transpose().cwiseProduct(g);
  const double sa = spectral_norm(sfp.h_tilde_pinv);
  const double sg = spectral_norm(sfp.g_pinv);
  sfp.lambda_max = sa * sa * sg * sg;
  return sfp;
}

int nearest_grid_index(double theta, int levels) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < levels; ++k) {
    const double diff = std::abs(t - kTwoPi * k / levels);
    const double dist = std::min(diff, kTwoPi - diff);
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  return best;
}

ReflectionState sfp_step(const ReflectionState& current, const SfpProblem& sfp) {
  const int n = current.size();
  if (sfp.support_gram.rows() != n) throw std::invalid_argument("SFP problem size mismatch");
  const int levels = current.levels();
  const CVec z = current.support();
  const CVec d = sfp.lambda_max * z - sfp.support_gram * z;
  const double zero = kZeroDirection * sfp.lambda_max;
  std::vector<int> idx = current.indices();
  for (int i = 0; i < n; ++i) {
    if (std::abs(d(i)) <= zero) continue;
    // The support entry is exp(-j phi), so phi takes the negated grid index.
    const int k = nearest_grid_index(std::arg(d(i)), levels);
    idx[i] = (levels - k) % levels;
  }
  return ReflectionState(std::move(idx), current.bits());
}

IrsResult optimize_irs(const CMat& H_r, const CMat& G, const RVec& p,
                       const ReflectionState& initial, int T_sfp, double tol) {
  if (T_sfp < 0) throw std::invalid_argument("T_sfp must be nonnegative");
  IrsResult out{initial, {f1(initial, H_r, p, G)}, 0, false};
  if (T_sfp == 0) return out;
  const SfpProblem sfp = build_sfp(H_r, p, G);
  while (out.iterations < T_sfp) {
    ReflectionState next = sfp_step(out.state, sfp);
    const double change = (next.coefficients() - out.state.coefficients()).squaredNorm();
    out.f1_trace.push_back(f1(next, H_r, p, G));
    out.state = std::move(next);
    ++out.iterations;
    // An unchanged state is a fixed point of the update, whatever the tolerance.
    if (change < tol || change == 0.0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

bool feasibility_check(double f1_value, double P_max) {
  return f1_value <= P_max * (1.0 + 1e-9);
}

}  // namespace irsnet
