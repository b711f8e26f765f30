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

#ifndef IRSNET_IPPU_HPP_
#define IRSNET_IPPU_HPP_

#include <string>
#include <vector>

#include "irsnet/assoc.hpp"
#include "irsnet/channel.hpp"
#include "irsnet/config.hpp"
#include "irsnet/precode.hpp"
#include "irsnet/reflection.hpp"
#include "irsnet/rng.hpp"

namespace irsnet {

enum class Status { kConverged, kHitTMax, kInfeasible };

std::string to_string(Status s);

struct IppuResult {
  ReflectionState phi;
  PowerAllocation powers;
  Association assoc;
  std::vector<double> rate_trace;  // R_sum after each outer iteration
  double initial_rate = 0.0;       // R_sum of the starting point
  int iterations = 0;
  // Iterations whose auction result had to be repaired for a full-rank channel;
  // the auction duals then describe the pre-repair assignment.
  int repairs = 0;
  // Iterations whose auction proposal lowered R_sum and was not taken.
  int rejected = 0;
  Status status = Status::kInfeasible;
  std::string failure;  // reason when status is kInfeasible; results are then unusable
};

// Water-fills every BS over its served users (user k is served by
// serving_bs[k]). Propagates RankDeficiencyError and QosInfeasibleError.
PowerAllocation allocate_all(const ChannelSet& ch, const ReflectionState& phi,
                             const std::vector<int>& serving_bs, const SystemConfig& cfg,
                             Link link = Link::kViaIrs);

// Per-user rates log2(1 + p / sigma2) in user order; 0 for unserved users.
std::vector<double> user_rates(const PowerAllocation& powers, int num_users, double sigma2);

// Nearest BS by Euclidean distance for every user.
std::vector<int> nearest_bs(const Geometry& geom);

// Moves users so that every BS serves someone and every BS's channel matrix
// has full row rank. Users leave a BS farthest-first for their next-nearest
// BS. Throws AssociationInfeasibleError when no such move exists.
std::vector<int> repair_association(std::vector<int> serving_bs, const Geometry& geom,
                                    const ChannelSet& ch, const ReflectionState& phi,
                                    Link link = Link::kViaIrs);

// S x K matrix of the rate user k would get from BS s under s's current
// allocation (see CandidatePolicy); NaN marks pairs that cannot be served.
RMat candidate_rates(const ChannelSet& ch, const ReflectionState& phi,
                     const std::vector<int>& serving_bs, const SystemConfig& cfg);

// Alternating optimization of IRS phases, per-BS powers and association.
IppuResult ippu(const ChannelSet& ch, const Geometry& geom, const SystemConfig& cfg, Rng& rng);

// Independent check of the problem constraints on a finished result. Returns
// one message per violation; empty when all hold.
std::vector<std::string> check_constraints(const IppuResult& result, const ChannelSet& ch,
                                           const SystemConfig& cfg);

}  // namespace irsnet

#endif  // IRSNET_IPPU_HPP_
