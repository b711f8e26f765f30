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

#include "irsnet/validate.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "irsnet/assoc.hpp"
#include "irsnet/errors.hpp"
#include "irsnet/harness.hpp"
#include "irsnet/irs_opt.hpp"
#include "irsnet/power.hpp"
#include "irsnet/precode.hpp"
#include "irsnet/rng.hpp"

namespace irsnet {

namespace {

CMat gaussian(int rows, int cols, Rng& rng) {
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = {normal(rng, 0.0, 1.0), normal(rng, 0.0, 1.0)};
  }
  return a;
}

RVec positive(int n, Rng& rng) {
  RVec p(n);
  for (int i = 0; i < n; ++i) p(i) = uniform(rng, 0.1, 2.0);
  return p;
}

// Runs body(rng) for each instance; body returns an empty string on success.
CheckResult check(const std::string& name, std::uint64_t seed, int instances,
                  const std::function<std::string(Rng&)>& body) {
  for (int i = 0; i < instances; ++i) {
    Rng rng = make_rng(seed, Stream::kTest, static_cast<std::uint64_t>(i));
    std::string failure;
    try {
      failure = body(rng);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (!failure.empty()) return {name, false, fmt::format("instance {}: {}", i, failure)};
  }
  return {name, true, fmt::format("{} instances", instances)};
}

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed, int instances) {
  std::vector<CheckResult> out;

  out.push_back(check("zf_residual", seed, instances, [](Rng& rng) -> std::string {
    const CMat H = gaussian(4, 8, rng);
    const Precoder zf = zf_precoder(H);
    const double residual = (H * zf.W - CMat::Identity(4, 4)).norm();
    if (residual >= 1e-8) return fmt::format("residual {:.3e}", residual);
    const RVec p = positive(4, rng);
    for (int k = 0; k < 4; ++k) {
      const double g = sinr(H, zf.W, p, k, 0.5);
      if (std::abs(g - p(k) / 0.5) > 1e-6 * p(k) / 0.5) return "SINR differs from p/sigma2";
    }
    return "";
  }));

  out.push_back(check("surrogate_bounds_power", seed, instances, [](Rng& rng) -> std::string {
    const int N = 6;
    const int K = uniform_int(rng, 1, N);
    const CMat H_r = gaussian(K, N, rng);
    const CMat G = gaussian(N, 8, rng);
    const RVec p = positive(K, rng);
    const ReflectionState phi = ReflectionState::random(N, 2, rng);
    const double exact = f1(phi, H_r, p, G);
    const double surrogate = build_sfp(H_r, p, G).objective(phi);
    if (surrogate < exact * (1.0 - 1e-9)) return "surrogate below f1";
    if (K == N && std::abs(surrogate - exact) > 1e-8 * exact) return "square case not exact";
    return "";
  }));

  out.push_back(check("majorizer", seed, instances, [](Rng& rng) -> std::string {
    const int N = 5;
    const CMat H_r = gaussian(3, N, rng);
    const SfpProblem sfp = build_sfp(H_r, positive(3, rng), gaussian(N, 7, rng));
    const CVec z = ReflectionState::random(N, 3, rng).support();
    const CVec zt = ReflectionState::random(N, 3, rng).support();
    const double scale = sfp.lambda_max * N;
    if (sfp.majorizer(z, zt) - sfp.objective(z) < -1e-9 * scale) return "bound violated";
    if (std::abs(sfp.majorizer(zt, zt) - sfp.objective(zt)) > 1e-9 * scale) return "not tight";
    return "";
  }));

  out.push_back(check("sfp_descent", seed, instances, [](Rng& rng) -> std::string {
    const int N = 8;
    const CMat H_r = gaussian(3, N, rng);
    const SfpProblem sfp = build_sfp(H_r, positive(3, rng), gaussian(N, 10, rng));
    ReflectionState phi = ReflectionState::random(N, 2, rng);
    double prev = sfp.objective(phi);
    for (int t = 0; t < 20; ++t) {
      phi = sfp_step(phi, sfp);
      const double cur = sfp.objective(phi);
      if (cur > prev + 1e-9 * std::max(1.0, prev)) return "surrogate increased";
      prev = cur;
    }
    return "";
  }));

  out.push_back(check("water_filling", seed, instances, [](Rng& rng) -> std::string {
    const int K = uniform_int(rng, 1, 5);
    const CMat H = gaussian(K, 8, rng);
    const double sigma2 = uniform(rng, 0.01, 1.0);
    const double R_min = uniform(rng, 0.0, 1.0);
    const RVec p = allocate_power(H, 10.0, sigma2, R_min);
    const RVec ref = oracle_allocate(H, 10.0, sigma2, R_min);
    if ((p.array() < qos_floor(sigma2, R_min)).any()) return "floor violated";
    if (transmit_power(H, p) > 10.0 * (1.0 + 1e-6)) return "budget violated";
    const double a = rate_objective(p, sigma2);
    const double b = rate_objective(ref, sigma2);
    if (std::abs(a - b) > 1e-6 * std::max(1.0, b)) return fmt::format("objective {} vs {}", a, b);
    return "";
  }));

  out.push_back(check("auction_optimal", seed, instances, [](Rng& rng) -> std::string {
    const int S = uniform_int(rng, 2, 4);
    const int K = uniform_int(rng, S, 9);
    IntMat values(S, K);
    for (int s = 0; s < S; ++s) {
      for (int k = 0; k < K; ++k) values(s, k) = uniform_int(rng, 1, 100);
    }
    const BenefitMatrix b = make_benefits(values);
    const Association fra = fra_solve(b, 0.2);
    if (!fra.complete()) return "incomplete association";
    if (total_benefit(fra, b) != total_benefit(brute_force_assignment(b), b)) return "suboptimal";
    if (!check_epsilon_cs(fra, b, 0.2)) return "epsilon-CS violated";
    return "";
  }));

  out.push_back(check("trial_determinism", seed, 2, [seed](Rng& rng) -> std::string {
    RunConfig cfg;
    cfg.system.K = 6;
    cfg.system.M = 8;
    cfg.system.N = 8;
    cfg.system.T_max = 5;
    const int trial = uniform_int(rng, 0, 1000);
    const TrialResult a = run_trial(cfg, Algorithm::kIppu, seed, trial);
    const TrialResult b = run_trial(cfg, Algorithm::kIppu, seed, trial);
    if (a.user_rates != b.user_rates || a.status != b.status) return "repeat run differs";
    return "";
  }));

  return out;
}

}  // namespace irsnet
