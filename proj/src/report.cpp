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
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "irsnet/errors.hpp"
#include "irsnet/harness.hpp"

namespace irsnet {

namespace {

// Shortest decimal text that parses back to the same double.
std::string num(double v) { return fmt::format("{}", v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir, ec.message()));
}

std::vector<std::vector<double>> rates_of(const Report& report) {
  std::vector<std::vector<double>> rates;
  for (const auto& r : report.results) rates.push_back(r.user_rates);
  return rates;
}

std::string metadata_yaml(const Report& report) {
  const Summary& s = report.summary;
  std::string out = fmt::format("algorithm: {}\nseed: {}\ntrials: {}\n", to_string(report.algorithm),
                                report.seed, report.results.size());
  out += "# resolved config\n" + emit_config(report.cfg);
  out += fmt::format(
      "# summary\nfeasible: {}\nconverged: {}\nmean_R_sum: {}\nstderr_R_sum: {}\n"
      "median_R_sum: {}\nmean_EE: {}\nmean_iterations: {}\n",
      s.feasible, s.converged, num(s.mean_R_sum), num(s.stderr_R_sum), num(s.median_R_sum),
      num(s.mean_EE), num(s.mean_iterations));
  return out;
}

std::string cdf_csv(const Report& report) {
  std::vector<double> v;
  for (const auto& r : report.results) {
    if (r.feasible()) v.push_back(r.R_sum);
  }
  std::sort(v.begin(), v.end());
  std::string out = "R_sum,probability\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += fmt::format("{},{}\n", num(v[i]), num(static_cast<double>(i + 1) / v.size()));
  }
  return out;
}

std::string outage_csv(const Report& report) {
  std::string out = "R_min,outage\n";
  if (report.results.empty()) return out;
  const auto rates = rates_of(report);
  for (double r : outage_grid()) {
    out += fmt::format("{},{}\n", num(r),
                       num(outage_probability(rates, r, report.cfg.system.channels_per_scene)));
  }
  return out;
}

std::string coverage_csv(const Report& report) {
  const int S = report.cfg.system.S;
  std::vector<double> served(S, 0.0);
  std::vector<double> rate(S, 0.0);
  int n = 0;
  for (const auto& r : report.results) {
    if (!r.feasible()) continue;
    ++n;
    for (int s = 0; s < S; ++s) {
      served[s] += r.served_count[s];
      rate[s] += r.bs_mean_rate[s];
    }
  }
  std::string out = "bs,mean_served,mean_user_rate\n";
  for (int s = 0; s < S; ++s) {
    out += fmt::format("{},{},{}\n", s, num(n ? served[s] / n : 0.0), num(n ? rate[s] / n : 0.0));
  }
  return out;
}

// Mean R_sum per outer iteration; a trial that stopped early keeps its last value.
std::string convergence_csv(const Report& report) {
  std::string out = "iteration,mean_R_sum\n";
  std::size_t longest = 0;
  int n = 0;
  for (const auto& r : report.results) {
    if (!r.feasible() || r.rate_trace.empty()) continue;
    longest = std::max(longest, r.rate_trace.size());
    ++n;
  }
  for (std::size_t t = 0; t < longest; ++t) {
    double sum = 0.0;
    for (const auto& r : report.results) {
      if (!r.feasible() || r.rate_trace.empty()) continue;
      sum += r.rate_trace[std::min(t, r.rate_trace.size() - 1)];
    }
    out += fmt::format("{},{}\n", t + 1, num(sum / n));
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw IoError("malformed number '" + s + "' in CSV");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || s.front() == '-') {
    throw IoError("malformed seed '" + s + "' in CSV");
  }
  return v;
}

}  // namespace

std::string trials_csv(const Report& report) {
  std::string out = "seed,algorithm,R_sum,EE,status";
  for (int k = 0; k < report.cfg.system.K; ++k) out += fmt::format(",rate_{}", k);
  out += '\n';
  for (const auto& r : report.results) {
    out += fmt::format("{},{},{},{},{}", r.seed, to_string(r.algorithm), num(r.R_sum), num(r.EE),
                       to_string(r.status));
    for (double v : r.user_rates) out += "," + num(v);
    out += '\n';
  }
  return out;
}

std::vector<TrialRow> parse_trials_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trials CSV");
  const std::vector<std::string> header = split(line, ',');
  const std::vector<std::string> fixed{"seed", "algorithm", "R_sum", "EE", "status"};
  if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin())) {
    throw IoError("unexpected trials CSV header");
  }
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != header.size()) throw IoError("trials CSV row has the wrong width");
    TrialRow row;
    row.seed = parse_u64(cells[0]);
    row.algorithm = cells[1];
    row.R_sum = parse_double(cells[2]);
    row.EE = parse_double(cells[3]);
    row.status = cells[4];
    for (std::size_t c = fixed.size(); c < cells.size(); ++c) {
      row.user_rates.push_back(parse_double(cells[c]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_report(const Report& report, const std::string& dir) {
  ensure_dir(dir);
  const std::filesystem::path base(dir);
  write_file(base / "metadata.yaml", metadata_yaml(report));
  write_file(base / "trials.csv", trials_csv(report));
  write_file(base / "cdf.csv", cdf_csv(report));
  write_file(base / "outage.csv", outage_csv(report));
  write_file(base / "coverage.csv", coverage_csv(report));
  write_file(base / "convergence.csv", convergence_csv(report));
}

std::string run_sweep(const RunConfig& cfg, const std::string& param,
                      const std::vector<std::string>& values,
                      const std::vector<Algorithm>& algorithms, int trials,
                      std::uint64_t master_seed, const std::string& dir, int threads) {
  static const std::map<std::string, std::string> kParams{
      {"Pmax", "P_max"}, {"M", "M"}, {"K", "K"}, {"N", "N"}, {"b", "b"}, {"Rmin", "R_min"}};
  const auto key = kParams.find(param);
  if (key == kParams.end()) throw ConfigError("unknown sweep parameter '" + param + "'");
  if (values.empty()) throw ConfigError("sweep needs at least one value");

  std::string out = "param,value,algorithm,trials,feasible,mean_R_sum,stderr_R_sum,mean_EE,outage\n";
  for (const auto& value : values) {
    RunConfig point = cfg;
    set_config_value(point, key->second, value);
    point.system.validate();
    for (Algorithm algorithm : algorithms) {
      const Report report = run_monte_carlo(point, trials, algorithm, master_seed, threads);
      const double outage = outage_probability(rates_of(report), point.system.R_min,
                                               point.system.channels_per_scene);
      const Summary& s = report.summary;
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", param, value, to_string(algorithm),
                         s.trials, s.feasible, num(s.mean_R_sum), num(s.stderr_R_sum),
                         num(s.mean_EE), num(outage));
    }
  }
  ensure_dir(dir);
  write_file(std::filesystem::path(dir) / ("sweep_" + param + ".csv"), out);
  return out;
}

}  // namespace irsnet
