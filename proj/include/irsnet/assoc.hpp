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

#ifndef IRSNET_ASSOC_HPP_
#define IRSNET_ASSOC_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace irsnet {

using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
using RMat = Eigen::MatrixXd;

// Stand-in for minus infinity in bids when a bidder has a single candidate.
inline constexpr double kNegInfBenefit = -1e12;

// Integer S x K benefits with the feasible pair set D.
struct BenefitMatrix {
  IntMat values;
  BoolMat feasible;
  int scale = 1;

  int num_bs() const { return static_cast<int>(values.rows()); }
  int num_users() const { return static_cast<int>(values.cols()); }
};

// Integer benefits round(scale * R / R_ref) with R_ref = R_min when positive
// and 1 otherwise. Pairs with R < R_min or a non-finite rate leave D. Throws
// AssociationInfeasibleError when no assignment can give every BS a user and
// every user a BS.
BenefitMatrix build_benefits(const RMat& rates, double R_min, int scale);

// Benefits given directly; every pair is feasible unless a mask is supplied.
BenefitMatrix make_benefits(const IntMat& values);
BenefitMatrix make_benefits(const IntMat& values, const BoolMat& feasible);

// True when some assignment gives each BS at least one user within D.
bool has_feasible_assignment(const BenefitMatrix& benefits);

struct Association {
  std::vector<int> serving_bs;  // per user; -1 while unassigned
  std::vector<double> pi;       // per BS
  std::vector<double> q;        // per user
  double mu = 0.0;
  double epsilon = 0.0;
  std::int64_t bids = 0;

  Association() = default;
  Association(int num_bs, int num_users, double eps);

  int num_bs() const { return static_cast<int>(pi.size()); }
  int num_users() const { return static_cast<int>(serving_bs.size()); }
  std::vector<int> served(int s) const;
  // Every user assigned and every BS serving at least one user.
  bool complete() const;
};

std::int64_t total_benefit(const Association& assoc, const BenefitMatrix& benefits);

// Bidding phase: unassigned BSs take their best user until every BS holds one.
Association forward_auction(Association state, const BenefitMatrix& benefits, double epsilon);

// Unassigned users join BSs until every user is served. A BS whose price is
// raised releases its single previous user, which bids again later.
Association reverse_auction(Association state, const BenefitMatrix& benefits, double epsilon);

// Forward then reverse auction from zero prices.
Association fra_solve(const BenefitMatrix& benefits, double epsilon);

// Exact maximum-benefit assignment by dynamic programming over the set of
// covered BSs; the lexicographically smallest optimum wins ties. Throws
// OracleTooLargeError beyond S = 5 or K = 12.
Association brute_force_assignment(const BenefitMatrix& benefits);

// Checks the epsilon-complementary-slackness conditions of a complete
// association: pi_s + q_k >= b_sk - eps on D, pi_s + q_k = b_sk on assigned
// pairs, and pi_s = max pi for BSs with several users.
bool check_epsilon_cs(const Association& assoc, const BenefitMatrix& benefits, double epsilon);

}  // namespace irsnet

#endif  // IRSNET_ASSOC_HPP_
