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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "irsnet/errors.hpp"
#include "irsnet/power.hpp"
#include "irsnet/precode.hpp"
#include "test_util.hpp"

namespace irsnet {
namespace {

using testing::gaussian;
using testing::test_rng;

// Per-user budget cost c_k = [(H H^H)^{-1}]_kk from a direct inverse.
RVec costs(const CMat& H) {
  return (H * H.adjoint()).inverse().diagonal().real();
}

// Rows with disjoint supports and the given norms.
CMat orthogonal_rows(const std::vector<double>& norms, int M) {
  CMat H = CMat::Zero(static_cast<int>(norms.size()), M);
  for (std::size_t k = 0; k < norms.size(); ++k) H(k, k) = norms[k];
  return H;
}

// KKT conditions of max sum log2(1 + p/s2) s.t. sum c p <= P, p >= floor.
void expect_kkt(const CMat& H, const RVec& p, double P_max, double sigma2, double R_min) {
  const RVec c = costs(H);
  const double floor = sigma2 * (std::exp2(R_min) - 1.0);
  const double spent = c.dot(p);
  EXPECT_NEAR(spent, P_max, 1e-8 * P_max);
  double level = -1.0;
  for (int k = 0; k < p.size(); ++k) {
    EXPECT_GE(p(k), floor * (1.0 - 1e-12));
    if (p(k) > floor * (1.0 + 1e-9) + 1e-300) {
      const double w = c(k) * (p(k) + sigma2);
      if (level < 0.0) level = w;
      EXPECT_NEAR(w, level, 1e-8 * level) << "active user " << k;
    }
  }
  if (level < 0.0) return;
  for (int k = 0; k < p.size(); ++k) {
    if (p(k) <= floor * (1.0 + 1e-9)) EXPECT_GE(c(k) * (floor + sigma2), level * (1.0 - 1e-8));
  }
}

TEST(EigProfile, IdentityAndDiagonal) {
  const EigenProfile id = eig_profile(CMat::Identity(3, 3));
  EXPECT_EQ(id.u, 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(id.lambdas(i), 1.0, 1e-14);

  const EigenProfile d = eig_profile(orthogonal_rows({1.0, 2.0}, 4));
  EXPECT_NEAR(d.lambdas(0), 4.0, 1e-14);
  EXPECT_NEAR(d.lambdas(1), 1.0, 1e-14);
}

TEST(EigProfile, TraceIdentityAndRank) {
  Rng rng = test_rng(900);
  const CMat H = gaussian(4, 7, rng);
  const EigenProfile e = eig_profile(H);
  EXPECT_NEAR(e.lambdas.sum(), H.squaredNorm(), 1e-9 * H.squaredNorm());
  EXPECT_EQ(e.u, 4);
  for (int i = 1; i < 4; ++i) EXPECT_GE(e.lambdas(i - 1), e.lambdas(i));

  CMat low = H;
  low.row(3) = low.row(0);
  EXPECT_EQ(eig_profile(low).u, 3);
  EXPECT_THROW(eig_profile(CMat()), std::invalid_argument);
}

TEST(WaterLevel, ClosedFormValues) {
  const double s2 = 0.1;
  EigenProfile one{RVec::Constant(1, 1.0), 1};
  EXPECT_NEAR(water_level(one, 2.0, s2, 0.0), 2.0 + s2, 1e-15);

  EigenProfile two{RVec::Constant(2, 1.0), 2};
  EXPECT_NEAR(water_level(two, 2.0, s2, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(water_level(two, 2.0, s2, 0.0), (2.0 + 2.0 * s2) / 2.0, 1e-15);

  EigenProfile none{RVec::Zero(2), 0};
  EXPECT_THROW(water_level(none, 1.0, s2, 0.0), DegenerateChannelError);
}

TEST(AllocatePower, SingleUserTakesTheBudget) {
  const RVec p = allocate_power(orthogonal_rows({1.0}, 3), 1.5, 0.01, 0.0);
  ASSERT_EQ(p.size(), 1);
  EXPECT_NEAR(p(0), 1.5, 1e-14);
  EXPECT_NEAR(oracle_allocate(orthogonal_rows({1.0}, 3), 1.5, 0.01, 0.0)(0), 1.5, 1e-12);
}

TEST(AllocatePower, EqualGainsGiveEqualPowers) {
  const RVec p = allocate_power(orthogonal_rows({2.0, 2.0, 2.0}, 5), 3.0, 0.1, 0.0);
  EXPECT_NEAR(p(0), p(1), 1e-14);
  EXPECT_NEAR(p(1), p(2), 1e-14);
}

TEST(AllocatePower, SatisfiesKktOnRandomInstances) {
  for (int i = 0; i < 100; ++i) {
    Rng rng = test_rng(1000 + i);
    const int K = uniform_int(rng, 1, 6);
    const CMat H = gaussian(K, 8, rng);
    const double sigma2 = std::pow(10.0, uniform(rng, -3.0, 0.0));
    const double R_min = i % 2 == 0 ? 0.0 : uniform(rng, 0.0, 1.0);
    const double budget = 10.0;
    if (costs(H).sum() * sigma2 * (std::exp2(R_min) - 1.0) > budget) continue;
    const RVec p = allocate_power(H, budget, sigma2, R_min);
    SCOPED_TRACE(i);
    expect_kkt(H, p, budget, sigma2, R_min);
    EXPECT_LE(transmit_power(H, p), budget * (1.0 + 1e-6));
  }
}

TEST(AllocatePower, MatchesOracle) {
  for (int i = 0; i < 50; ++i) {
    Rng rng = test_rng(1200 + i);
    const CMat H = gaussian(3, 6, rng);
    const double sigma2 = uniform(rng, 0.05, 1.0);
    const RVec p = allocate_power(H, 5.0, sigma2, 0.3);
    const RVec q = oracle_allocate(H, 5.0, sigma2, 0.3);
    const double a = rate_objective(p, sigma2);
    const double b = rate_objective(q, sigma2);
    EXPECT_NEAR(a, b, 1e-4 * b) << i;
    EXPECT_GE(b, a - 1e-6);
  }
}

TEST(AllocatePower, OrthogonalRowsMatchOracleAndEigenForm) {
  const CMat H = orthogonal_rows({3.0, 1.0, 0.5, 2.0}, 6);
  const double sigma2 = 0.2;
  const RVec p = allocate_power(H, 4.0, sigma2, 0.0);
  const RVec q = oracle_allocate(H, 4.0, sigma2, 0.0);
  EXPECT_LT((p - q).cwiseAbs().maxCoeff(), 1e-6);

  std::vector<double> sorted(p.data(), p.data() + p.size());
  std::sort(sorted.rbegin(), sorted.rend());
  const RVec eig = eigen_closed_form(eig_profile(H), 4.0, sigma2, 0.0);
  ASSERT_EQ(eig.size(), 4);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(eig(j), sorted[j], 1e-9);
}

TEST(AllocatePower, WeakUsersSitAtTheFloor) {
  const CMat H = orthogonal_rows({10.0, 1.0}, 3);
  const double sigma2 = 1.0;
  const RVec p = allocate_power(H, 1.0, sigma2, 0.5);
  const double floor = qos_floor(sigma2, 0.5);
  EXPECT_NEAR(p(1), floor, 1e-12);
  EXPECT_GT(p(0), floor);
  expect_kkt(H, p, 1.0, sigma2, 0.5);
}

TEST(AllocatePower, InfeasibleFloorThrows) {
  const CMat H = orthogonal_rows({0.01, 1.0}, 3);
  try {
    allocate_power(H, 1.0, 1.0, 2.0);
    FAIL() << "expected QosInfeasibleError";
  } catch (const QosInfeasibleError& e) {
    EXPECT_GT(e.floor_power(), e.budget());
    EXPECT_DOUBLE_EQ(e.budget(), 1.0);
  }
  EXPECT_THROW(oracle_allocate(H, 1.0, 1.0, 2.0), QosInfeasibleError);
}

TEST(AllocatePower, ObjectiveGrowsWithBudget) {
  Rng rng = test_rng(1300);
  const CMat H = gaussian(4, 6, rng);
  double prev = -1.0;
  for (double P : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double obj = rate_objective(allocate_power(H, P, 0.1, 0.2), 0.1);
    EXPECT_GE(obj, prev);
    prev = obj;
  }
}

TEST(OracleAllocate, ComplementarySlackness) {
  for (int i = 0; i < 20; ++i) {
    Rng rng = test_rng(1400 + i);
    const CMat H = gaussian(4, 6, rng);
    const RVec q = oracle_allocate(H, 2.0, 0.5, 0.1);
    SCOPED_TRACE(i);
    expect_kkt(H, q, 2.0, 0.5, 0.1);
  }
}

TEST(RateObjective, Values) {
  RVec p(2);
  p << 1.0, 3.0;
  EXPECT_NEAR(rate_objective(p, 1.0), 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(qos_floor(2.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(qos_floor(2.0, 0.0), 0.0);
}

}  // namespace
}  // namespace irsnet
