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

#include "irsnet/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "irsnet/errors.hpp"

namespace irsnet {

namespace {

constexpr int kOracleMaxBs = 5;
constexpr int kOracleMaxUsers = 12;

double value(const BenefitMatrix& b, int s, int k) { return static_cast<double>(b.values(s, k)); }

// Compares pi + q with a target, scaling the tolerance by the operands so that
// prices near the minus-infinity stand-in are judged at their own precision.
bool sum_matches(double pi, double q, double target) {
  const double scale = std::max({1.0, std::abs(pi), std::abs(q), std::abs(target)});
  return std::abs(pi + q - target) <= 1e-9 * scale;
}

// Best and second-best of f over the indices accepted by `ok`, lowest index on ties.
template <typename Ok, typename F>
void best_two(int n, Ok ok, F f, int& best, double& first, double& second) {
  best = -1;
  first = kNegInfBenefit;
  second = kNegInfBenefit;
  for (int i = 0; i < n; ++i) {
    if (!ok(i)) continue;
    const double v = f(i);
    if (best < 0 || v > first) {
      if (best >= 0) second = first;
      first = v;
      best = i;
    } else if (v > second) {
      second = v;
    }
  }
}

bool augment(int s, const BenefitMatrix& b, std::vector<int>& owner, std::vector<bool>& seen) {
  for (int k = 0; k < b.num_users(); ++k) {
    if (!b.feasible(s, k) || seen[k]) continue;
    seen[k] = true;
    if (owner[k] < 0 || augment(owner[k], b, owner, seen)) {
      owner[k] = s;
      return true;
    }
  }
  return false;
}

void check_shape(const BenefitMatrix& b) {
  if (b.values.rows() != b.feasible.rows() || b.values.cols() != b.feasible.cols()) {
    throw std::invalid_argument("benefit values and feasibility mask differ in shape");
  }
  if (b.num_bs() < 1 || b.num_users() < b.num_bs()) {
    throw std::invalid_argument("association needs K >= S >= 1");
  }
}

}  // namespace

BenefitMatrix make_benefits(const IntMat& values) {
  return make_benefits(values, BoolMat::Constant(values.rows(), values.cols(), true));
}

BenefitMatrix make_benefits(const IntMat& values, const BoolMat& feasible) {
  BenefitMatrix b{values, feasible, 1};
  check_shape(b);
  return b;
}

bool has_feasible_assignment(const BenefitMatrix& b) {
  for (int k = 0; k < b.num_users(); ++k) {
    if (!b.feasible.col(k).any()) return false;
  }
  std::vector<int> owner(b.num_users(), -1);
  for (int s = 0; s < b.num_bs(); ++s) {
    std::vector<bool> seen(b.num_users(), false);
    if (!augment(s, b, owner, seen)) return false;
  }
  return true;
}

BenefitMatrix build_benefits(const RMat& rates, double R_min, int scale) {
  if (R_min < 0.0) throw std::invalid_argument("R_min must be nonnegative");
  if (scale < 1) throw std::invalid_argument("benefit scale must be at least 1");
  const double ref = R_min > 0.0 ? R_min : 1.0;
  BenefitMatrix b;
  b.scale = scale;
  b.values = IntMat::Zero(rates.rows(), rates.cols());
  b.feasible = BoolMat::Constant(rates.rows(), rates.cols(), false);
  for (Eigen::Index s = 0; s < rates.rows(); ++s) {
    for (Eigen::Index k = 0; k < rates.cols(); ++k) {
      const double r = rates(s, k);
      if (!std::isfinite(r) || r < R_min) continue;
      b.feasible(s, k) = true;
      b.values(s, k) = std::llround(scale * r / ref);
    }
  }
  check_shape(b);
  if (!has_feasible_assignment(b)) {
    throw AssociationInfeasibleError(
        "no association serves every user and gives every BS a user at the rate floor");
  }
  return b;
}

Association::Association(int num_bs, int num_users, double eps)
    : serving_bs(num_users, -1), pi(num_bs, 0.0), q(num_users, 0.0), epsilon(eps) {}

std::vector<int> Association::served(int s) const {
  std::vector<int> users;
  for (int k = 0; k < num_users(); ++k) {
    if (serving_bs[k] == s) users.push_back(k);
  }
  return users;
}

bool Association::complete() const {
  std::vector<int> count(num_bs(), 0);
  for (int s : serving_bs) {
    if (s < 0 || s >= num_bs()) return false;
    ++count[s];
  }
  return std::all_of(count.begin(), count.end(), [](int c) { return c > 0; });
}

std::int64_t total_benefit(const Association& assoc, const BenefitMatrix& benefits) {
  std::int64_t total = 0;
  for (int k = 0; k < assoc.num_users(); ++k) {
    const int s = assoc.serving_bs[k];
    if (s >= 0) total += benefits.values(s, k);
  }
  return total;
}

Association forward_auction(Association state, const BenefitMatrix& benefits, double epsilon) {
  const int S = benefits.num_bs();
  const int K = benefits.num_users();
  std::vector<int> held(S, 0);
  for (int s : state.serving_bs) {
    if (s >= 0) ++held[s];
  }
  while (true) {
    const auto it = std::find(held.begin(), held.end(), 0);
    if (it == held.end()) break;
    const int s = static_cast<int>(it - held.begin());
    int ks = -1;
    double best = 0.0;
    double second = 0.0;
    best_two(
        K, [&](int k) { return benefits.feasible(s, k); },
        [&](int k) { return value(benefits, s, k) - state.q[k]; }, ks, best, second);
    if (ks < 0) throw AssociationInfeasibleError(fmt::format("BS {} has no feasible user", s));
    state.q[ks] = value(benefits, s, ks) - second + epsilon;
    const int previous = state.serving_bs[ks];
    if (previous >= 0) --held[previous];
    state.serving_bs[ks] = s;
    ++held[s];
    state.pi[s] = value(benefits, s, ks) - state.q[ks];
    ++state.bids;
  }
  return state;
}

Association reverse_auction(Association state, const BenefitMatrix& benefits, double epsilon) {
  const int S = benefits.num_bs();
  const double lambda = *std::max_element(state.pi.begin(), state.pi.end());
  while (true) {
    const auto it = std::find(state.serving_bs.begin(), state.serving_bs.end(), -1);
    if (it == state.serving_bs.end()) break;
    const int k = static_cast<int>(it - state.serving_bs.begin());
    int sk = -1;
    double zeta = 0.0;
    double second = 0.0;
    best_two(
        S, [&](int s) { return benefits.feasible(s, k); },
        [&](int s) { return value(benefits, s, k) - state.pi[s]; }, sk, zeta, second);
    if (sk < 0) throw AssociationInfeasibleError(fmt::format("user {} has no feasible BS", k));
    const double delta = std::min(lambda - state.pi[sk], zeta - second + epsilon);
    if (delta > 0.0) {
      // Below the top price the BS holds a single user, which it now releases.
      for (int& owner : state.serving_bs) {
        if (owner == sk) owner = -1;
      }
    }
    state.serving_bs[k] = sk;
    state.pi[sk] += delta;
    state.q[k] = zeta - delta;
    ++state.bids;
  }
  state.mu = lambda;
  return state;
}

Association fra_solve(const BenefitMatrix& benefits, double epsilon) {
  check_shape(benefits);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!has_feasible_assignment(benefits)) {
    throw AssociationInfeasibleError("benefit matrix admits no feasible association");
  }
  Association state(benefits.num_bs(), benefits.num_users(), epsilon);
  state = forward_auction(std::move(state), benefits, epsilon);
  return reverse_auction(std::move(state), benefits, epsilon);
}

Association brute_force_assignment(const BenefitMatrix& benefits) {
  check_shape(benefits);
  const int S = benefits.num_bs();
  const int K = benefits.num_users();
  if (S > kOracleMaxBs || K > kOracleMaxUsers) {
    throw OracleTooLargeError(fmt::format("brute force supports S <= {} and K <= {}, got {}x{}",
                                          kOracleMaxBs, kOracleMaxUsers, S, K));
  }
  const int full = (1 << S) - 1;
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
  // best[k][mask]: best total over users k.. given the BSs in mask are covered.
  std::vector<std::vector<std::int64_t>> best(K + 1, std::vector<std::int64_t>(full + 1, kNone));
  best[K][full] = 0;
  for (int k = K - 1; k >= 0; --k) {
    for (int mask = 0; mask <= full; ++mask) {
      for (int s = 0; s < S; ++s) {
        if (!benefits.feasible(s, k)) continue;
        const std::int64_t rest = best[k + 1][mask | (1 << s)];
        if (rest == kNone) continue;
        best[k][mask] = std::max(best[k][mask], rest + benefits.values(s, k));
      }
    }
  }
  if (best[0][0] == kNone) throw AssociationInfeasibleError("no feasible association exists");
  Association out(S, K, 0.0);
  int mask = 0;
  for (int k = 0; k < K; ++k) {
    for (int s = 0; s < S; ++s) {
      if (!benefits.feasible(s, k)) continue;
      const std::int64_t rest = best[k + 1][mask | (1 << s)];
      if (rest != kNone && rest + benefits.values(s, k) == best[k][mask]) {
        out.serving_bs[k] = s;
        mask |= 1 << s;
        break;
      }
    }
  }
  return out;
}

bool check_epsilon_cs(const Association& assoc, const BenefitMatrix& benefits, double epsilon) {
  if (!assoc.complete() || assoc.num_bs() != benefits.num_bs() ||
      assoc.num_users() != benefits.num_users()) {
    return false;
  }
  const double top = *std::max_element(assoc.pi.begin(), assoc.pi.end());
  for (int s = 0; s < benefits.num_bs(); ++s) {
    for (int k = 0; k < benefits.num_users(); ++k) {
      if (!benefits.feasible(s, k)) continue;
      const double b = value(benefits, s, k);
      if (assoc.pi[s] + assoc.q[k] < b - epsilon &&
          !sum_matches(assoc.pi[s], assoc.q[k], b - epsilon)) {
        return false;
      }
    }
  }
  for (int k = 0; k < benefits.num_users(); ++k) {
    const int s = assoc.serving_bs[k];
    if (!benefits.feasible(s, k)) return false;
    if (!sum_matches(assoc.pi[s], assoc.q[k], value(benefits, s, k))) return false;
  }
  for (int s = 0; s < benefits.num_bs(); ++s) {
    if (assoc.served(s).size() > 1 && !sum_matches(assoc.pi[s], 0.0, top)) return false;
  }
  return true;
}

}  // namespace irsnet
