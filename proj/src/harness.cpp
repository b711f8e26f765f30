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

#include "irsnet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "irsnet/errors.hpp"

namespace irsnet {

namespace {

constexpr double kFloorSlack = 1e-9;

TrialResult finish(TrialResult r, const PowerAllocation& powers, const std::vector<int>& serving,
                   const RunConfig& cfg, bool with_irs) {
  const SystemConfig& sc = cfg.system;
  r.user_rates = user_rates(powers, sc.K, sc.sigma2);
  r.served_count.assign(sc.S, 0);
  r.bs_mean_rate.assign(sc.S, 0.0);
  for (int k = 0; k < sc.K; ++k) {
    ++r.served_count[serving[k]];
    r.bs_mean_rate[serving[k]] += r.user_rates[k];
  }
  for (int s = 0; s < sc.S; ++s) {
    if (r.served_count[s] > 0) r.bs_mean_rate[s] /= r.served_count[s];
  }
  r.R_sum = 0.0;
  for (double v : r.user_rates) r.R_sum += v;
  r.EE = energy_efficiency(r.R_sum, powers, cfg.energy, sc, with_irs);
  return r;
}

TrialResult infeasible(TrialResult r, const SystemConfig& cfg, std::string why) {
  r.status = Status::kInfeasible;
  r.failure = std::move(why);
  r.R_sum = 0.0;
  r.EE = 0.0;
  r.user_rates.assign(cfg.K, 0.0);
  r.served_count.assign(cfg.S, 0);
  r.bs_mean_rate.assign(cfg.S, 0.0);
  return r;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kIppu: return "ippu";
    case Algorithm::kRpbfNbua: return "rpbf-nbua";
    case Algorithm::kNoIrs: return "no-irs";
    case Algorithm::kPbfUapc: return "pbf-uapc";
    default: return "af-relay";
  }
}

Algorithm parse_algorithm(const std::string& tag) {
  for (Algorithm a : {Algorithm::kIppu, Algorithm::kRpbfNbua, Algorithm::kNoIrs,
                      Algorithm::kPbfUapc, Algorithm::kAfRelay}) {
    if (to_string(a) == tag) return a;
  }
  throw ConfigError("unknown algorithm '" + tag + "'");
}

Geometry gen_geometry(const SystemConfig& cfg, Rng& rng) {
  Geometry g{cfg.bs_positions, cfg.irs_position, {}};
  g.user_positions.reserve(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const double r = cfg.area_radius * std::sqrt(uniform(rng, 0.0, 1.0));
    const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    g.user_positions.push_back({cfg.area_center.x + r * std::cos(t),
                                cfg.area_center.y + r * std::sin(t)});
  }
  return g;
}

Scenario gen_scenario(const SystemConfig& cfg, std::uint64_t master_seed, int trial) {
  if (trial < 0) throw std::invalid_argument("trial index must be nonnegative");
  const auto scene = static_cast<std::uint64_t>(trial / cfg.channels_per_scene);
  Rng scene_rng = make_rng(master_seed, Stream::kScene, scene);
  Scenario out;
  out.geom = gen_geometry(cfg, scene_rng);
  out.channel_seed = derive_seed(master_seed, Stream::kChannel, static_cast<std::uint64_t>(trial));
  Rng channel_rng(out.channel_seed);
  out.channels = gen_channels(out.geom, cfg, channel_rng);
  return out;
}

TrialResult baseline_rpbf_nbua(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg,
                               Rng& rng) {
  const SystemConfig& sc = cfg.system;
  TrialResult r;
  r.algorithm = Algorithm::kRpbfNbua;
  const ReflectionState phi = ReflectionState::random(sc.N, sc.b, rng);
  try {
    const std::vector<int> serving = repair_association(nearest_bs(geom), geom, ch, phi);
    const PowerAllocation powers = allocate_all(ch, phi, serving, sc);
    r.status = Status::kConverged;
    return finish(std::move(r), powers, serving, cfg, true);
  } catch (const Error& e) {
    return infeasible(std::move(r), sc, e.what());
  }
}

TrialResult baseline_no_irs(const ChannelSet& ch, const Geometry& geom, const RunConfig& cfg) {
  const SystemConfig& sc = cfg.system;
  TrialResult r;
  r.algorithm = Algorithm::kNoIrs;
  const ReflectionState unused = ReflectionState::zeros(sc.N, sc.b);
  std::vector<int> rssi(sc.K, 0);
  for (int k = 0; k < sc.K; ++k) {
    double best = -1.0;
    for (int s = 0; s < sc.S; ++s) {
      const double power = user_channel(s, k, ch, unused, Link::kBlocked).squaredNorm();
      if (power > best) {
        best = power;
        rssi[k] = s;
      }
    }
  }
  try {
    const std::vector<int> serving = repair_association(rssi, geom, ch, unused, Link::kBlocked);
    const PowerAllocation powers = allocate_all(ch, unused, serving, sc, Link::kBlocked);
    r.status = Status::kConverged;
    return finish(std::move(r), powers, serving, cfg, false);
  } catch (const Error& e) {
    return infeasible(std::move(r), sc, e.what());
  }
}

TrialResult baseline_pbf_uapc(const ChannelSet&, const Geometry&, const RunConfig&) {
  throw OutOfScopeError("the PBF+UAPC baseline is not reproduced");
}

TrialResult baseline_af_relay(const ChannelSet&, const Geometry&, const RunConfig&) {
  throw OutOfScopeError("the AF-relay comparison is not reproduced");
}

double energy_efficiency(double R_sum, const PowerAllocation& powers, const EnergyModel& model,
                         const SystemConfig& cfg, bool with_irs) {
  const double consumed = model.eta * powers.total() + cfg.S * model.P_BS + cfg.K * model.P_u +
                          (with_irs ? cfg.N * model.P_n : 0.0);
  return R_sum / consumed;
}

double outage_probability(const std::vector<std::vector<double>>& user_rates, double R_min,
                          int channels_per_scene) {
  if (user_rates.empty()) throw std::invalid_argument("outage needs at least one trial");
  if (channels_per_scene < 1) throw std::invalid_argument("channels_per_scene must be positive");
  std::size_t samples = 0;
  std::size_t outages = 0;
  for (std::size_t start = 0; start < user_rates.size(); start += channels_per_scene) {
    const std::size_t stop = std::min(user_rates.size(), start + channels_per_scene);
    const std::size_t users = user_rates[start].size();
    for (std::size_t k = 0; k < users; ++k) {
      double mean = 0.0;
      for (std::size_t t = start; t < stop; ++t) mean += user_rates[t].at(k);
      mean /= static_cast<double>(stop - start);
      ++samples;
      // Rates pinned to the floor by the power step land on R_min up to rounding.
      if (mean <= R_min + kFloorSlack) ++outages;
    }
  }
  return samples ? static_cast<double>(outages) / static_cast<double>(samples) : 0.0;
}

TrialResult run_trial(const RunConfig& cfg, Algorithm algorithm, std::uint64_t master_seed,
                      int trial) {
  const Scenario sc = gen_scenario(cfg.system, master_seed, trial);
  Rng rng = make_rng(master_seed, Stream::kAlgorithm, static_cast<std::uint64_t>(trial));
  TrialResult r;
  switch (algorithm) {
    case Algorithm::kIppu: {
      const IppuResult res = ippu(sc.channels, sc.geom, cfg.system, rng);
      r.algorithm = algorithm;
      r.iterations = res.iterations;
      r.rate_trace = res.rate_trace;
      if (res.status == Status::kInfeasible) {
        r = infeasible(std::move(r), cfg.system, res.failure);
      } else {
        r.status = res.status;
        r = finish(std::move(r), res.powers, res.assoc.serving_bs, cfg, true);
      }
      break;
    }
    case Algorithm::kRpbfNbua:
      r = baseline_rpbf_nbua(sc.channels, sc.geom, cfg, rng);
      break;
    case Algorithm::kNoIrs:
      r = baseline_no_irs(sc.channels, sc.geom, cfg);
      break;
    case Algorithm::kPbfUapc:
      r = baseline_pbf_uapc(sc.channels, sc.geom, cfg);
      break;
    case Algorithm::kAfRelay:
      r = baseline_af_relay(sc.channels, sc.geom, cfg);
      break;
  }
  r.trial = trial;
  r.seed = sc.channel_seed;
  return r;
}

Summary summarize(const std::vector<TrialResult>& results) {
  Summary s;
  s.trials = static_cast<int>(results.size());
  std::vector<double> rates;
  double ee = 0.0;
  double iters = 0.0;
  for (const auto& r : results) {
    if (!r.feasible()) continue;
    rates.push_back(r.R_sum);
    ee += r.EE;
    iters += r.iterations;
    s.converged += r.status == Status::kConverged;
  }
  s.feasible = static_cast<int>(rates.size());
  if (rates.empty()) return s;
  const double n = static_cast<double>(rates.size());
  for (double v : rates) s.mean_R_sum += v;
  s.mean_R_sum /= n;
  if (rates.size() > 1) {
    double ss = 0.0;
    for (double v : rates) ss += (v - s.mean_R_sum) * (v - s.mean_R_sum);
    s.stderr_R_sum = std::sqrt(ss / (n - 1.0) / n);
  }
  s.median_R_sum = median(rates);
  s.mean_EE = ee / n;
  s.mean_iterations = iters / n;
  return s;
}

Report run_monte_carlo(const RunConfig& cfg, int trials, Algorithm algorithm,
                       std::uint64_t master_seed, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  cfg.system.validate();
  cfg.energy.validate();
  Report report{cfg, algorithm, master_seed, std::vector<TrialResult>(trials), {}};
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, trials);

  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (int t = next++; t < trials && !failed; t = next++) {
      try {
        report.results[t] = run_trial(cfg, algorithm, master_seed, t);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  report.summary = summarize(report.results);
  return report;
}

std::vector<double> outage_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(static_cast<double>(i));
  return grid;
}

}  // namespace irsnet
