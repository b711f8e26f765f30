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

#include "irsnet/ippu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "irsnet/errors.hpp"
#include "irsnet/irs_opt.hpp"
#include "irsnet/power.hpp"

namespace irsnet {

namespace {

std::vector<int> members(const std::vector<int>& serving_bs, int s) {
  std::vector<int> users;
  for (int k = 0; k < static_cast<int>(serving_bs.size()); ++k) {
    if (serving_bs[k] == s) users.push_back(k);
  }
  return users;
}

bool full_rank(const CMat& H) { return pseudo_inverse(H).rank == H.rows(); }

bool full_rank_set(int s, const std::vector<int>& users, const ChannelSet& ch,
                   const ReflectionState& phi, Link link) {
  return users.empty() || full_rank(assemble_channel_matrix(s, users, ch, phi, link));
}

// BS indices ordered by distance from point p, nearest first.
std::vector<int> by_distance(const Geometry& geom, const Point2& p) {
  std::vector<int> order(geom.bs_positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return distance(geom.bs_positions[a], p) < distance(geom.bs_positions[b], p);
  });
  return order;
}

// Equal per-user powers scaled so that each BS spends exactly P_max.
PowerAllocation equal_split(const ChannelSet& ch, const ReflectionState& phi,
                            const std::vector<int>& serving_bs, const SystemConfig& cfg) {
  PowerAllocation out(cfg.S);
  for (int s = 0; s < cfg.S; ++s) {
    const std::vector<int> users = members(serving_bs, s);
    if (users.empty()) continue;
    const CMat pinv = full_row_rank_pinv(assemble_channel_matrix(s, users, ch, phi));
    const double p = cfg.P_max / pinv.colwise().squaredNorm().sum();
    for (int k : users) out.per_bs[s][k] = p;
  }
  return out;
}

RVec power_vector(const PowerAllocation& powers, int s, const std::vector<int>& users) {
  RVec p(static_cast<Eigen::Index>(users.size()));
  for (std::size_t r = 0; r < users.size(); ++r) p(r) = powers.per_bs[s].at(users[r]);
  return p;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::kConverged: return "converged";
    case Status::kHitTMax: return "hit_T_max";
    default: return "infeasible";
  }
}

PowerAllocation allocate_all(const ChannelSet& ch, const ReflectionState& phi,
                             const std::vector<int>& serving_bs, const SystemConfig& cfg,
                             Link link) {
  PowerAllocation out(cfg.S);
  for (int s = 0; s < cfg.S; ++s) {
    const std::vector<int> users = members(serving_bs, s);
    if (users.empty()) continue;
    const CMat H = assemble_channel_matrix(s, users, ch, phi, link);
    const RVec p = allocate_power(H, cfg.P_max, cfg.sigma2, cfg.R_min);
    for (std::size_t r = 0; r < users.size(); ++r) out.per_bs[s][users[r]] = p(r);
  }
  return out;
}

std::vector<double> user_rates(const PowerAllocation& powers, int num_users, double sigma2) {
  std::vector<double> rates(num_users, 0.0);
  for (const auto& bs : powers.per_bs) {
    for (const auto& [k, p] : bs) rates.at(k) = std::log2(1.0 + p / sigma2);
  }
  return rates;
}

std::vector<int> nearest_bs(const Geometry& geom) {
  std::vector<int> out;
  out.reserve(geom.user_positions.size());
  for (const Point2& u : geom.user_positions) out.push_back(by_distance(geom, u).front());
  return out;
}

std::vector<int> repair_association(std::vector<int> serving_bs, const Geometry& geom,
                                    const ChannelSet& ch, const ReflectionState& phi, Link link) {
  const int S = static_cast<int>(geom.bs_positions.size());
  const int K = static_cast<int>(serving_bs.size());
  if (K < S) throw AssociationInfeasibleError("fewer users than base stations");

  // Every BS takes the closest user from a BS that can spare one.
  for (int s = 0; s < S; ++s) {
    if (!members(serving_bs, s).empty()) continue;
    int pick = -1;
    for (int k = 0; k < K; ++k) {
      if (members(serving_bs, serving_bs[k]).size() < 2) continue;
      if (pick < 0 || distance(geom.user_positions[k], geom.bs_positions[s]) <
                          distance(geom.user_positions[pick], geom.bs_positions[s])) {
        pick = k;
      }
    }
    serving_bs[pick] = s;
  }

  // Shed users from rank-deficient BSs, farthest first.
  for (int guard = 0; guard < K * S; ++guard) {
    int bad = -1;
    for (int s = 0; s < S && bad < 0; ++s) {
      if (!full_rank_set(s, members(serving_bs, s), ch, phi, link)) bad = s;
    }
    if (bad < 0) return serving_bs;
    std::vector<int> users = members(serving_bs, bad);
    std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
      return distance(geom.user_positions[a], geom.bs_positions[bad]) >
             distance(geom.user_positions[b], geom.bs_positions[bad]);
    });
    bool moved = false;
    for (int k : users) {
      if (users.size() < 2) break;
      for (int t : by_distance(geom, geom.user_positions[k])) {
        if (t == bad) continue;
        std::vector<int> target = members(serving_bs, t);
        target.push_back(k);
        if (!full_rank_set(t, target, ch, phi, link)) continue;
        serving_bs[k] = t;
        moved = true;
        break;
      }
      if (moved) break;
    }
    if (!moved) {
      throw AssociationInfeasibleError(
          fmt::format("BS {} cannot shed users to reach a full-rank channel", bad));
    }
  }
  throw AssociationInfeasibleError("association repair did not settle");
}

RMat candidate_rates(const ChannelSet& ch, const ReflectionState& phi,
                     const std::vector<int>& serving_bs, const SystemConfig& cfg) {
  const int K = static_cast<int>(serving_bs.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  RMat rates = RMat::Constant(cfg.S, K, nan);
  auto rates_for = [&](int s, const std::vector<int>& users) -> RVec {
    try {
      const CMat H = assemble_channel_matrix(s, users, ch, phi);
      const RVec p = allocate_power(H, cfg.P_max, cfg.sigma2, cfg.R_min);
      return p.unaryExpr([&](double v) { return std::log2(1.0 + v / cfg.sigma2); });
    } catch (const Error&) {
      return RVec::Constant(static_cast<Eigen::Index>(users.size()), nan);
    }
  };
  for (int s = 0; s < cfg.S; ++s) {
    const std::vector<int> served = members(serving_bs, s);
    if (!served.empty()) {
      const RVec r = rates_for(s, served);
      for (std::size_t i = 0; i < served.size(); ++i) rates(s, served[i]) = r(i);
    }
    for (int k = 0; k < K; ++k) {
      if (serving_bs[k] == s) continue;
      if (cfg.candidate_policy == CandidatePolicy::kSingleUser) {
        const double gain = user_channel(s, k, ch, phi).squaredNorm();
        if (gain > 0.0) rates(s, k) = std::log2(1.0 + cfg.P_max * gain / cfg.sigma2);
        continue;
      }
      std::vector<int> with_k = served;
      with_k.insert(std::upper_bound(with_k.begin(), with_k.end(), k), k);
      const RVec r = rates_for(s, with_k);
      const auto pos = std::find(with_k.begin(), with_k.end(), k) - with_k.begin();
      rates(s, k) = r(pos);
    }
  }
  return rates;
}

IppuResult ippu(const ChannelSet& ch, const Geometry& geom, const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  const int i = cfg.irs_assisted_bs;
  IppuResult out{ReflectionState::random(cfg.N, cfg.b, rng), PowerAllocation(cfg.S),
                 Association(cfg.S, cfg.K, cfg.epsilon), {}, 0.0, 0, 0, 0, Status::kInfeasible, ""};
  try {
    std::vector<int> serving = repair_association(nearest_bs(geom), geom, ch, out.phi);
    out.assoc.serving_bs = serving;
    out.powers = equal_split(ch, out.phi, serving, cfg);
    out.initial_rate = sum_rate(out.powers, cfg.sigma2);
    double previous = out.initial_rate;

    for (int t = 1; t <= cfg.T_max; ++t) {
      // IRS phases for the users of the assisted BS at their current powers.
      const std::vector<int> users_i = members(serving, i);
      CMat H_r(static_cast<Eigen::Index>(users_i.size()), cfg.N);
      for (std::size_t r = 0; r < users_i.size(); ++r) H_r.row(r) = ch.h_r.row(users_i[r]);
      const RVec p_i = power_vector(out.powers, i, users_i);
      const IrsResult irs = optimize_irs(H_r, ch.G, p_i, out.phi, cfg.T_sfp, cfg.xi_tol);
      double power_needed = irs.f1_trace.front();
      if (irs.f1_trace.back() <= power_needed) {
        out.phi = irs.state;
        power_needed = irs.f1_trace.back();
      }
      if (!feasibility_check(power_needed, cfg.P_max)) {
        out.failure = fmt::format("IRS step needs {:.6g} W against a {:.6g} W budget",
                                  power_needed, cfg.P_max);
        out.status = Status::kInfeasible;
        return out;
      }

      out.powers = allocate_all(ch, out.phi, serving, cfg);
      const double kept_rate = sum_rate(out.powers, cfg.sigma2);

      const RMat rates = candidate_rates(ch, out.phi, serving, cfg);
      const BenefitMatrix benefits = build_benefits(rates, cfg.R_min, cfg.benefit_scale);
      Association proposal = fra_solve(benefits, cfg.epsilon);
      // Pair rates are scored one candidate at a time, so the chosen sets can
      // still be jointly rank deficient.
      std::vector<int> proposed = repair_association(proposal.serving_bs, geom, ch, out.phi);
      if (proposed != proposal.serving_bs) {
        ++out.repairs;
        proposal.serving_bs = proposed;
      }
      PowerAllocation proposed_powers = allocate_all(ch, out.phi, proposed, cfg);
      double current = sum_rate(proposed_powers, cfg.sigma2);
      if (cfg.ua_acceptance == UaAcceptance::kAlways || current >= kept_rate) {
        out.assoc = std::move(proposal);
        out.powers = std::move(proposed_powers);
        serving = std::move(proposed);
      } else {
        ++out.rejected;
        current = kept_rate;
      }
      out.rate_trace.push_back(current);
      out.iterations = t;
      if ((current - previous) * (current - previous) <= cfg.xi_tol) {
        out.status = Status::kConverged;
        return out;
      }
      previous = current;
    }
    out.status = Status::kHitTMax;
  } catch (const Error& e) {
    out.status = Status::kInfeasible;
    out.failure = e.what();
  }
  return out;
}

std::vector<std::string> check_constraints(const IppuResult& result, const ChannelSet& ch,
                                           const SystemConfig& cfg) {
  std::vector<std::string> issues;
  if (result.phi.size() != cfg.N || result.phi.bits() != cfg.b) {
    issues.push_back("reflection state does not match N and b");
  }
  const Association& a = result.assoc;
  if (a.num_users() != cfg.K) {
    issues.push_back("association does not cover K users");
    return issues;
  }
  for (int k = 0; k < cfg.K; ++k) {
    const int s = a.serving_bs[k];
    if (s < 0 || s >= cfg.S) issues.push_back(fmt::format("user {} has no serving BS", k));
  }
  if (!issues.empty()) return issues;
  for (int s = 0; s < cfg.S; ++s) {
    const std::vector<int> users = members(a.serving_bs, s);
    if (users.empty()) {
      issues.push_back(fmt::format("BS {} serves no user", s));
      continue;
    }
    if (static_cast<int>(result.powers.per_bs.size()) != cfg.S ||
        result.powers.per_bs[s].size() != users.size()) {
      issues.push_back(fmt::format("BS {} powers do not match its users", s));
      continue;
    }
    RVec p(static_cast<Eigen::Index>(users.size()));
    for (std::size_t r = 0; r < users.size(); ++r) {
      const auto it = result.powers.per_bs[s].find(users[r]);
      if (it == result.powers.per_bs[s].end()) {
        issues.push_back(fmt::format("user {} has no power at BS {}", users[r], s));
        p(r) = 0.0;
        continue;
      }
      p(r) = it->second;
      if (p(r) < 0.0) issues.push_back(fmt::format("user {} has negative power", users[r]));
      if (std::log2(1.0 + p(r) / cfg.sigma2) < cfg.R_min - 1e-9) {
        issues.push_back(fmt::format("user {} is below the rate floor", users[r]));
      }
    }
    try {
      const double spent = transmit_power(assemble_channel_matrix(s, users, ch, result.phi), p);
      if (spent > cfg.P_max * (1.0 + 1e-6)) {
        issues.push_back(fmt::format("BS {} spends {:.9g} W over the budget", s, spent));
      }
    } catch (const RankDeficiencyError&) {
      issues.push_back(fmt::format("BS {} channel is rank deficient", s));
    }
  }
  return issues;
}

}  // namespace irsnet
