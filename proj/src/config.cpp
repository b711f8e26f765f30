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

#include "irsnet/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "irsnet/errors.hpp"

namespace irsnet {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }

namespace {

using Setter = std::function<void(const YAML::Node&, RunConfig&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeyDesc {
  std::string name;
  std::string unit;
  std::string help;
  Setter set;
  Getter get;
};

// Shortest representation that survives a round trip.
std::string num(double v) { return fmt::format("{}", v); }
// Values that went through a dB conversion; 12 digits hide the rounding.
std::string dbnum(double v) { return fmt::format("{:.12g}", v); }

std::string point(const Point2& p) { return fmt::format("[{}, {}]", num(p.x), num(p.y)); }

Point2 as_point(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != 2) throw ConfigError("expected a point [x, y]");
  return {n[0].as<double>(), n[1].as<double>()};
}

PathLossParams as_triple(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != 3) throw ConfigError("expected a triple [a, b, sigma]");
  return {n[0].as<double>(), n[1].as<double>(), n[2].as<double>()};
}

template <typename T>
KeyDesc plain(std::string name, std::string unit, std::string help, T SystemConfig::*field) {
  return {std::move(name), std::move(unit), std::move(help),
          [field](const YAML::Node& n, RunConfig& c) { c.system.*field = n.as<T>(); },
          [field](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return num(c.system.*field);
            } else {
              return fmt::format("{}", c.system.*field);
            }
          }};
}

KeyDesc dbm(std::string name, std::string help, double SystemConfig::*field) {
  return {std::move(name), "dBm", std::move(help),
          [field](const YAML::Node& n, RunConfig& c) {
            c.system.*field = dbm_to_watts(n.as<double>());
          },
          [field](const RunConfig& c) { return dbnum(watts_to_dbm(c.system.*field)); }};
}

KeyDesc dbi(std::string name, std::string help, double SystemConfig::*field) {
  return {std::move(name), "dBi", std::move(help),
          [field](const YAML::Node& n, RunConfig& c) {
            c.system.*field = db_to_linear(n.as<double>());
          },
          [field](const RunConfig& c) { return dbnum(linear_to_db(c.system.*field)); }};
}

KeyDesc triple(std::string name, std::string help, PathLossParams SystemConfig::*field) {
  return {std::move(name), "dB", std::move(help),
          [field](const YAML::Node& n, RunConfig& c) { c.system.*field = as_triple(n); },
          [field](const RunConfig& c) {
            const PathLossParams& p = c.system.*field;
            return fmt::format("[{}, {}, {}]", num(p.a), num(p.b), num(p.sigma));
          }};
}

KeyDesc energy(std::string name, std::string unit, std::string help,
               double EnergyModel::*field) {
  const bool is_dbw = unit == "dBW";
  const bool is_dbm = unit == "dBm";
  return {std::move(name), std::move(unit), std::move(help),
          [=](const YAML::Node& n, RunConfig& c) {
            const double v = n.as<double>();
            c.energy.*field = is_dbw ? db_to_linear(v) : is_dbm ? dbm_to_watts(v) : v;
          },
          [=](const RunConfig& c) {
            const double v = c.energy.*field;
            return is_dbw ? dbnum(linear_to_db(v)) : is_dbm ? dbnum(watts_to_dbm(v)) : num(v);
          }};
}

const std::vector<KeyDesc>& key_table() {
  static const std::vector<KeyDesc> table = [] {
    std::vector<KeyDesc> t;
    t.push_back(plain("S", "count", "number of base stations", &SystemConfig::S));
    t.push_back(plain("K", "count", "number of single-antenna users (M > K >= S)",
                      &SystemConfig::K));
    t.push_back(plain("M", "count", "antennas per base station", &SystemConfig::M));
    t.push_back(plain("N", "count", "IRS elements", &SystemConfig::N));
    t.push_back(plain("b", "bits", "IRS phase resolution; 2^b levels", &SystemConfig::b));
    t.push_back(plain("carrier_freq", "Hz", "carrier frequency (metadata only)",
                      &SystemConfig::carrier_freq));
    t.push_back(plain("bandwidth", "Hz", "system bandwidth (metadata only)",
                      &SystemConfig::bandwidth));
    t.push_back(plain("d_over_lambda", "ratio", "array element spacing over wavelength",
                      &SystemConfig::d_over_lambda));
    t.push_back(plain("G_p", "count", "NLOS paths per multipath channel", &SystemConfig::G_p));
    t.push_back(dbm("sigma2", "noise power", &SystemConfig::sigma2));
    t.push_back(dbm("P_max", "per-BS transmit power budget", &SystemConfig::P_max));
    t.push_back(plain("R_min", "bits/s/Hz", "per-user minimum rate", &SystemConfig::R_min));
    t.push_back(dbi("xi_t", "transmit antenna gain", &SystemConfig::xi_t));
    t.push_back(dbi("xi_r", "receive antenna gain", &SystemConfig::xi_r));
    t.push_back(triple("los_pl", "LOS path loss [a, b, sigma]", &SystemConfig::los_pl));
    t.push_back(triple("nlos_pl", "NLOS path loss [a, b, sigma]", &SystemConfig::nlos_pl));
    t.push_back({"bs_positions", "m", "list of S base-station points [[x, y], ...]",
                 [](const YAML::Node& n, RunConfig& c) {
                   if (!n.IsSequence()) throw ConfigError("expected a list of points");
                   c.system.bs_positions.clear();
                   for (const auto& p : n) c.system.bs_positions.push_back(as_point(p));
                 },
                 [](const RunConfig& c) {
                   std::string s = "[";
                   for (std::size_t i = 0; i < c.system.bs_positions.size(); ++i) {
                     if (i) s += ", ";
                     s += point(c.system.bs_positions[i]);
                   }
                   return s + "]";
                 }});
    t.push_back({"irs_position", "m", "IRS point [x, y]",
                 [](const YAML::Node& n, RunConfig& c) { c.system.irs_position = as_point(n); },
                 [](const RunConfig& c) { return point(c.system.irs_position); }});
    t.push_back({"area_center", "m", "center [x, y] of the user disk",
                 [](const YAML::Node& n, RunConfig& c) { c.system.area_center = as_point(n); },
                 [](const RunConfig& c) { return point(c.system.area_center); }});
    t.push_back(plain("area_radius", "m", "radius of the user disk", &SystemConfig::area_radius));
    t.push_back(plain("irs_assisted_bs", "index", "0-based BS whose direct links are blocked",
                      &SystemConfig::irs_assisted_bs));
    t.push_back(plain("epsilon", "benefit units", "auction bid increment",
                      &SystemConfig::epsilon));
    t.push_back(plain("benefit_scale", "integer", "benefit = round(scale * R / R_ref)",
                      &SystemConfig::benefit_scale));
    t.push_back(plain("xi_tol", "(bits/s/Hz)^2", "outer-loop convergence tolerance",
                      &SystemConfig::xi_tol));
    t.push_back(plain("T_max", "count", "outer iteration cap", &SystemConfig::T_max));
    t.push_back(plain("T_sfp", "count", "IRS phase iteration cap", &SystemConfig::T_sfp));
    t.push_back(plain("seed", "integer", "master RNG seed", &SystemConfig::seed));
    t.push_back(plain("channels_per_scene", "count",
                      "consecutive trials that share one user drop", &SystemConfig::channels_per_scene));
    t.push_back({"angle_model", "enum", "geometric | random",
                 [](const YAML::Node& n, RunConfig& c) {
                   const auto v = n.as<std::string>();
                   if (v == "geometric") {
                     c.system.angle_model = AngleModel::kGeometric;
                   } else if (v == "random") {
                     c.system.angle_model = AngleModel::kRandom;
                   } else {
                     throw ConfigError("expected geometric or random, got '" + v + "'");
                   }
                 },
                 [](const RunConfig& c) { return to_string(c.system.angle_model); }});
    t.push_back({"candidate_policy", "enum", "augmented | single-user",
                 [](const YAML::Node& n, RunConfig& c) {
                   const auto v = n.as<std::string>();
                   if (v == "augmented") {
                     c.system.candidate_policy = CandidatePolicy::kAugmented;
                   } else if (v == "single-user") {
                     c.system.candidate_policy = CandidatePolicy::kSingleUser;
                   } else {
                     throw ConfigError("expected augmented or single-user, got '" + v + "'");
                   }
                 },
                 [](const RunConfig& c) { return to_string(c.system.candidate_policy); }});
    t.push_back({"ua_acceptance", "enum", "improve | always",
                 [](const YAML::Node& n, RunConfig& c) {
                   const auto v = n.as<std::string>();
                   if (v == "improve") {
                     c.system.ua_acceptance = UaAcceptance::kImprove;
                   } else if (v == "always") {
                     c.system.ua_acceptance = UaAcceptance::kAlways;
                   } else {
                     throw ConfigError("expected improve or always, got '" + v + "'");
                   }
                 },
                 [](const RunConfig& c) { return to_string(c.system.ua_acceptance); }});
    t.push_back(energy("eta", "ratio", "power amplifier inefficiency", &EnergyModel::eta));
    t.push_back(energy("P_BS", "dBW", "static power per BS", &EnergyModel::P_BS));
    t.push_back(energy("P_u", "dBm", "power per user device", &EnergyModel::P_u));
    t.push_back(energy("P_n", "dBm", "power per IRS element", &EnergyModel::P_n));
    return t;
  }();
  return table;
}

const KeyDesc& find_key(const std::string& key) {
  for (const auto& d : key_table()) {
    if (d.name == key) return d;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void apply(const KeyDesc& d, const YAML::Node& value, RunConfig& cfg) {
  try {
    d.set(value, cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("config key '{}': {}", d.name, e.what()));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("config key '{}': bad value ({})", d.name, e.msg));
  }
}

}  // namespace

void SystemConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
  };
  require(S >= 1, "S >= 1");
  require(K >= S, "K >= S");
  require(M > K, "M > K");
  require(N >= 1, "N >= 1");
  require(b >= 1 && b <= 16, "1 <= b <= 16");
  require(G_p >= 0, "G_p >= 0");
  require(d_over_lambda > 0.0, "d_over_lambda > 0");
  require(sigma2 > 0.0 && std::isfinite(sigma2), "sigma2 finite");
  require(P_max > 0.0 && std::isfinite(P_max), "P_max finite");
  require(R_min >= 0.0 && std::isfinite(R_min), "R_min >= 0");
  require(xi_t > 0.0 && xi_r > 0.0, "antenna gains finite");
  require(los_pl.sigma >= 0.0 && nlos_pl.sigma >= 0.0, "shadowing sigma >= 0");
  require(static_cast<int>(bs_positions.size()) == S, "bs_positions has S entries");
  require(area_radius > 0.0, "area_radius > 0");
  require(irs_assisted_bs >= 0 && irs_assisted_bs < S, "0 <= irs_assisted_bs < S");
  require(epsilon > 0.0, "epsilon > 0");
  require(benefit_scale >= 1, "benefit_scale >= 1");
  require(xi_tol >= 0.0, "xi_tol >= 0");
  require(T_max >= 1, "T_max >= 1");
  require(T_sfp >= 0, "T_sfp >= 0");
  require(channels_per_scene >= 1, "channels_per_scene >= 1");
}

void EnergyModel::validate() const {
  if (!(eta > 0.0 && P_BS > 0.0 && P_u > 0.0 && P_n > 0.0)) {
    throw ConfigError("invalid config: energy model constants must be positive");
  }
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("config parse error: " + e.msg);
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("config must be a flat key/value mapping");
  for (const auto& kv : root) {
    apply(find_key(kv.first.as<std::string>()), kv.second, cfg);
  }
  cfg.system.validate();
  cfg.energy.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  YAML::Node node;
  try {
    node = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("config key '{}': bad value ({})", key, e.msg));
  }
  apply(find_key(key), node, cfg);
}

std::string emit_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& d : key_table()) out += fmt::format("{}: {}\n", d.name, d.get(cfg));
  return out;
}

std::string config_keys_help() {
  const RunConfig defaults;
  std::string out = "Config keys (flat YAML, unknown keys are errors):\n";
  for (const auto& d : key_table()) {
    out += fmt::format("  {:<20} {:<15} {} (default {})\n", d.name, "[" + d.unit + "]", d.help,
                       d.get(defaults));
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& d : key_table()) keys.push_back(d.name);
  return keys;
}

std::string to_string(AngleModel m) {
  return m == AngleModel::kGeometric ? "geometric" : "random";
}

std::string to_string(UaAcceptance a) {
  return a == UaAcceptance::kImprove ? "improve" : "always";
}

std::string to_string(CandidatePolicy p) {
  return p == CandidatePolicy::kAugmented ? "augmented" : "single-user";
}

}  // namespace irsnet
