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

#include "irsnet/power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "irsnet/errors.hpp"
#include "irsnet/precode.hpp"

namespace irsnet {

namespace {

// Column energies c_k = ||H^+ e_k||^2, the per-unit-power budget cost of user k.
RVec budget_costs(const CMat& H) { return full_row_rank_pinv(H).colwise().squaredNorm().transpose(); }

void check_budget(const RVec& cost, double floor, double P_max) {
  const double need = floor * cost.sum();
  if (need > P_max * (1.0 + 1e-12)) {
    throw QosInfeasibleError(
        fmt::format("rate floors need {:.6g} W but the budget is {:.6g} W", need, P_max), need,
        P_max);
  }
}

RVec powers_at_level(double w, const RVec& cost, double floor, double sigma2) {
  RVec p(cost.size());
  for (Eigen::Index k = 0; k < cost.size(); ++k) p(k) = std::max(floor, w / cost(k) - sigma2);
  return p;
}

}  // namespace

EigenProfile eig_profile(const CMat& H) {
  if (H.size() == 0) throw std::invalid_argument("empty channel matrix");
  Eigen::SelfAdjointEigenSolver<CMat> es(H * H.adjoint(), Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues().reverse().cwiseMax(0.0);
  EigenProfile out{ev, 0};
  if (ev(0) > 0.0) {
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.u += ev(i) > kRankTol * ev(0);
  }
  return out;
}

double water_level(const EigenProfile& profile, double P_max, double sigma2, double R_min) {
  if (profile.u < 1) throw DegenerateChannelError("channel has no significant eigenvalue");
  const double inv_sum = profile.lambdas.head(profile.u).cwiseInverse().sum();
  return (P_max - sigma2 * (std::exp2(R_min) - 2.0) * inv_sum) / profile.u;
}

RVec eigen_closed_form(const EigenProfile& profile, double P_max, double sigma2, double R_min) {
  const double w = water_level(profile, P_max, sigma2, R_min);
  RVec p(profile.u);
  for (int j = 0; j < profile.u; ++j) {
    const double lam = profile.lambdas(j);
    p(j) = std::max(0.0, w * lam - sigma2) + sigma2 * (std::exp2(R_min) - 1.0) / lam;
  }
  return p;
}

double qos_floor(double sigma2, double R_min) { return sigma2 * (std::exp2(R_min) - 1.0); }

double rate_objective(const RVec& p, double sigma2) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) total += std::log2(1.0 + p(k) / sigma2);
  return total;
}

RVec allocate_power(const CMat& H, double P_max, double sigma2, double R_min) {
  const RVec cost = budget_costs(H);
  const double floor = qos_floor(sigma2, R_min);
  check_budget(cost, floor, P_max);
  const Eigen::Index K = cost.size();

  // User k rises above its floor once w exceeds cost_k (floor + sigma2).
  std::vector<Eigen::Index> order(K);
  std::iota(order.begin(), order.end(), 0);
  auto breakpoint = [&](Eigen::Index k) { return cost(k) * (floor + sigma2); };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return breakpoint(a) < breakpoint(b); });

  // With the first m users active: m w - sigma2 sum_active c + floor sum_rest c = P_max.
  double active_cost = 0.0;
  double rest_cost = cost.sum();
  for (Eigen::Index m = 1; m <= K; ++m) {
    const Eigen::Index k = order[m - 1];
    active_cost += cost(k);
    rest_cost -= cost(k);
    const double w = (P_max - floor * rest_cost + sigma2 * active_cost) / static_cast<double>(m);
    const bool below_next = m == K || w <= breakpoint(order[m]);
    if (w < breakpoint(k) || !below_next) continue;
    // w / c_k - sigma2 cancels badly when a user's share is tiny next to sigma2;
    // this form keeps the budget sum exact.
    const double budget = P_max - floor * rest_cost;
    RVec p = RVec::Constant(K, floor);
    for (Eigen::Index a = 0; a < m; ++a) {
      const Eigen::Index j = order[a];
      double spread = 0.0;
      for (Eigen::Index b = 0; b < m; ++b) spread += cost(order[b]) - cost(j);
      const double share = (budget + sigma2 * spread) / (static_cast<double>(m) * cost(j));
      p(j) = std::max(floor, share);
    }
    return p;
  }
  // Budget exactly consumed by the floors.
  return RVec::Constant(K, floor);
}

RVec oracle_allocate(const CMat& H, double P_max, double sigma2, double R_min) {
  const CMat pinv = full_row_rank_pinv(H);
  const RVec cost = pinv.colwise().squaredNorm().transpose();
  const double floor = qos_floor(sigma2, R_min);
  check_budget(cost, floor, P_max);
  auto spend = [&](double w) {
    return transmit_power_from_pinv(pinv, powers_at_level(w, cost, floor, sigma2));
  };
  double lo = 0.0;
  double hi = 1.0;
  while (spend(hi) < P_max) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spend(mid) <= P_max ? lo : hi) = mid;
  }
  return powers_at_level(lo, cost, floor, sigma2);
}

}  // namespace irsnet
