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

#ifndef IRSNET_CONFIG_HPP_
#define IRSNET_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace irsnet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

// Log-distance path loss kappa = a + 10 b log10(d) + N(0, sigma^2), in dB.
struct PathLossParams {
  double a = 0.0;
  double b = 0.0;
  double sigma = 0.0;
};

// How line-of-sight angles are chosen. kGeometric measures the displacement
// angle against each array's boresight; kRandom draws every angle uniformly.
enum class AngleModel { kGeometric, kRandom };

// How the association step scores a user that a BS does not serve yet.
// kAugmented water-fills over the BS's served users plus the candidate;
// kSingleUser gives the candidate the whole budget alone.
enum class CandidatePolicy { kAugmented, kSingleUser };

// Whether the outer loop takes the auction's association unconditionally or
// only when it does not lower R_sum.
enum class UaAcceptance { kImprove, kAlways };

// Scenario constants. Every power and gain is stored on a linear scale
// (Watts, linear ratios); the file format uses dBm/dBW/dBi.
struct SystemConfig {
  int S = 3;
  int K = 16;
  int M = 32;
  int N = 32;
  int b = 2;
  double carrier_freq = 28e9;
  double bandwidth = 500e6;
  double d_over_lambda = 0.5;
  int G_p = 5;
  double sigma2 = 3.1622776601683795e-10;  // -65 dBm
  double P_max = 1.0;                      // 30 dBm
  double R_min = 0.0;
  double xi_t = 9.594006315159332;   // 9.82 dBi
  double xi_r = 1.0;                 // 0 dBi
  PathLossParams los_pl{61.4, 2.0, 5.8};
  PathLossParams nlos_pl{72.0, 2.92, 8.7};
  std::vector<Point2> bs_positions{{0.0, 0.0}, {200.0, 200.0}, {300.0, 0.0}};
  Point2 irs_position{50.0, 100.0};
  Point2 area_center{150.0, 50.0};
  double area_radius = 30.0;
  int irs_assisted_bs = 0;
  double epsilon = 0.2;
  int benefit_scale = 100;
  double xi_tol = 1e-4;
  int T_max = 30;
  int T_sfp = 50;
  std::uint64_t seed = 1;
  int channels_per_scene = 1;
  AngleModel angle_model = AngleModel::kGeometric;
  CandidatePolicy candidate_policy = CandidatePolicy::kAugmented;
  UaAcceptance ua_acceptance = UaAcceptance::kImprove;

  int levels() const { return 1 << b; }
  // Throws ConfigError naming the first violated invariant.
  void validate() const;
};

struct EnergyModel {
  double eta = 1.2;
  double P_BS = 3.1622776601683795;  // 5 dBW
  double P_u = 0.01;                 // 10 dBm
  double P_n = 0.01;                 // 10 dBm

  void validate() const;
};

struct RunConfig {
  SystemConfig system;
  EnergyModel energy;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double linear);

// Flat key/value YAML. Keys missing from the file keep their defaults;
// unknown keys and malformed values raise ConfigError.
RunConfig load_config_file(const std::string& path);
RunConfig parse_config(const std::string& text);

// Overrides one key using the same text syntax as the file format, e.g.
// set_config_value(cfg, "P_max", "20") or (cfg, "los_pl", "[61.4, 2, 5.8]").
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// The resolved configuration in file units, one "key: value" line per key,
// in a fixed order. parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& cfg);

// Help text listing every key with its unit and default.
std::string config_keys_help();

std::vector<std::string> config_keys();

std::string to_string(AngleModel m);
std::string to_string(CandidatePolicy p);
std::string to_string(UaAcceptance a);

}  // namespace irsnet

#endif  // IRSNET_CONFIG_HPP_
