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

#include "irsnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace irsnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double direction(const Point2& from, const Point2& to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

double link_gain(double d, const PathLossParams& pl, Rng& rng) {
  return pathloss_db(d, pl, normal(rng, 0.0, pl.sigma));
}

// LOS angle at an array located at `from` looking toward `to`.
double los_angle(const Point2& from, const Point2& to, double boresight,
                 const SystemConfig& cfg, Rng& rng) {
  if (cfg.angle_model == AngleModel::kRandom) return uniform(rng, 0.0, kTwoPi);
  return relative_angle(from, to, boresight);
}

// Single-path row sqrt(n) alpha xi_t xi_r a_n(theta)^T.
CRow single_path_row(double kappa, double theta, int n, const SystemConfig& cfg, Rng& rng) {
  const cdouble alpha = complex_gain(kappa, rng);
  const cdouble scale = std::sqrt(static_cast<double>(n)) * alpha * cfg.xi_t * cfg.xi_r;
  return scale * ula_steering(theta, n, cfg.d_over_lambda).transpose();
}

}  // namespace

CVec ula_steering(double theta, int n, double d_over_lambda) {
  if (!std::isfinite(theta)) throw std::invalid_argument("steering angle must be finite");
  if (n < 1) throw std::invalid_argument("array size must be positive");
  CVec a(n);
  const double step = kTwoPi * d_over_lambda * std::sin(theta);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m) a(m) = std::polar(norm, step * m);
  return a;
}

double pathloss_db(double distance_m, const PathLossParams& pl, double shadow_db) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("link distance must be positive");
  return pl.a + 10.0 * pl.b * std::log10(distance_m) + shadow_db;
}

cdouble complex_gain(double kappa_db, Rng& rng) {
  const double sd = std::sqrt(std::pow(10.0, -0.1 * kappa_db) / 2.0);
  const double re = normal(rng, 0.0, 1.0);
  const double im = normal(rng, 0.0, 1.0);
  return {sd * re, sd * im};
}

double bs_boresight(const Geometry& geom, const SystemConfig& cfg, int s) {
  const Point2& p = geom.bs_positions.at(s);
  if (s == cfg.irs_assisted_bs) return direction(p, geom.irs_position);
  return direction(p, cfg.area_center);
}

double irs_boresight(const Geometry& geom, const SystemConfig& cfg) {
  const Point2& bs = geom.bs_positions.at(cfg.irs_assisted_bs);
  const Point2 mid{(bs.x + cfg.area_center.x) / 2.0, (bs.y + cfg.area_center.y) / 2.0};
  return direction(geom.irs_position, mid);
}

double relative_angle(const Point2& from, const Point2& to, double boresight) {
  return std::remainder(direction(from, to) - boresight, kTwoPi);
}

CMat gen_bs_irs_channel(const Geometry& geom, const SystemConfig& cfg, Rng& rng) {
  const int i = cfg.irs_assisted_bs;
  const Point2& bs = geom.bs_positions.at(i);
  const double d = distance(bs, geom.irs_position);
  const double scale = std::sqrt(static_cast<double>(cfg.M) * cfg.N) * cfg.xi_t * cfg.xi_r;

  auto path = [&](double kappa, double aoa, double aod) -> CMat {
    const cdouble alpha = complex_gain(kappa, rng);
    return (scale * alpha) * ula_steering(aoa, cfg.N, cfg.d_over_lambda).conjugate() *
           ula_steering(aod, cfg.M, cfg.d_over_lambda).transpose();
  };

  const double kappa0 = link_gain(d, cfg.los_pl, rng);
  const double aoa0 = los_angle(geom.irs_position, bs, irs_boresight(geom, cfg), cfg, rng);
  const double aod0 = los_angle(bs, geom.irs_position, bs_boresight(geom, cfg, i), cfg, rng);
  CMat G = path(kappa0, aoa0, aod0);
  for (int g = 1; g <= cfg.G_p; ++g) {
    const double kappa = link_gain(d, cfg.nlos_pl, rng);
    const double aoa = uniform(rng, 0.0, kTwoPi);
    const double aod = uniform(rng, 0.0, kTwoPi);
    G += path(kappa, aoa, aod);
  }
  return G;
}

CRow gen_irs_user_channel(const Geometry& geom, int k, const SystemConfig& cfg, Rng& rng) {
  const Point2& u = geom.user_positions.at(k);
  const double kappa = link_gain(distance(geom.irs_position, u), cfg.los_pl, rng);
  const double theta = los_angle(geom.irs_position, u, irs_boresight(geom, cfg), cfg, rng);
  return single_path_row(kappa, theta, cfg.N, cfg, rng);
}

CRow gen_direct_channel(const Geometry& geom, int j, int k, const SystemConfig& cfg, Rng& rng) {
  const Point2& bs = geom.bs_positions.at(j);
  const Point2& u = geom.user_positions.at(k);
  const double kappa = link_gain(distance(bs, u), cfg.los_pl, rng);
  const double theta = los_angle(bs, u, bs_boresight(geom, cfg, j), cfg, rng);
  return single_path_row(kappa, theta, cfg.M, cfg, rng);
}

CRow gen_blocked_direct_channel(const Geometry& geom, int k, const SystemConfig& cfg, Rng& rng) {
  const Point2& bs = geom.bs_positions.at(cfg.irs_assisted_bs);
  const double d = distance(bs, geom.user_positions.at(k));
  CRow row = CRow::Zero(cfg.M);
  for (int g = 1; g <= cfg.G_p; ++g) {
    const double kappa = link_gain(d, cfg.nlos_pl, rng);
    const double theta = uniform(rng, 0.0, kTwoPi);
    row += single_path_row(kappa, theta, cfg.M, cfg, rng);
  }
  return row;
}

ChannelSet gen_channels(const Geometry& geom, const SystemConfig& cfg, Rng& rng) {
  if (static_cast<int>(geom.bs_positions.size()) != cfg.S ||
      static_cast<int>(geom.user_positions.size()) != cfg.K) {
    throw std::invalid_argument("geometry does not match the configured S and K");
  }
  ChannelSet ch;
  ch.irs_bs = cfg.irs_assisted_bs;
  ch.G = gen_bs_irs_channel(geom, cfg, rng);
  ch.h_r.resize(cfg.K, cfg.N);
  for (int k = 0; k < cfg.K; ++k) ch.h_r.row(k) = gen_irs_user_channel(geom, k, cfg, rng);
  ch.h_d.assign(cfg.S, CMat());
  for (int j = 0; j < cfg.S; ++j) {
    if (j == ch.irs_bs) continue;
    ch.h_d[j].resize(cfg.K, cfg.M);
    for (int k = 0; k < cfg.K; ++k) ch.h_d[j].row(k) = gen_direct_channel(geom, j, k, cfg, rng);
  }
  ch.blocked_direct.resize(cfg.K, cfg.M);
  for (int k = 0; k < cfg.K; ++k) {
    ch.blocked_direct.row(k) = gen_blocked_direct_channel(geom, k, cfg, rng);
  }
  return ch;
}

CRow cascaded_channel(const CRow& h_r, const ReflectionState& phi, const CMat& G) {
  if (h_r.size() != phi.size() || G.rows() != phi.size()) {
    throw std::invalid_argument(fmt::format(
        "cascade dimension mismatch: h_r {}, Phi {}, G {}x{}", h_r.size(), phi.size(),
        G.rows(), G.cols()));
  }
  return h_r.cwiseProduct(phi.coefficients().transpose()) * G;
}

CRow user_channel(int s, int k, const ChannelSet& ch, const ReflectionState& phi, Link link) {
  if (s < 0 || s >= static_cast<int>(ch.h_d.size())) throw std::out_of_range("BS index");
  if (k < 0 || k >= ch.h_r.rows()) throw std::out_of_range("user index");
  if (s != ch.irs_bs) return ch.h_d[s].row(k);
  if (link == Link::kBlocked) return ch.blocked_direct.row(k);
  return cascaded_channel(ch.h_r.row(k), phi, ch.G);
}

CMat assemble_channel_matrix(int s, const std::vector<int>& served, const ChannelSet& ch,
                             const ReflectionState& phi, Link link) {
  if (served.empty()) throw std::invalid_argument("served user set is empty");
  std::vector<int> users = served;
  std::sort(users.begin(), users.end());
  for (int k : users) {
    if (k < 0 || k >= ch.h_r.rows()) throw std::out_of_range("user index");
  }
  const Eigen::Index cols = s == ch.irs_bs && link == Link::kViaIrs ? ch.G.cols()
                            : s == ch.irs_bs                       ? ch.blocked_direct.cols()
                                                                   : ch.h_d.at(s).cols();
  CMat H(static_cast<Eigen::Index>(users.size()), cols);
  if (s == ch.irs_bs && link == Link::kViaIrs) {
    CMat rows(static_cast<Eigen::Index>(users.size()), ch.h_r.cols());
    for (std::size_t r = 0; r < users.size(); ++r) rows.row(r) = ch.h_r.row(users[r]);
    if (rows.cols() != phi.size()) throw std::invalid_argument("Phi size does not match N");
    return rows * phi.coefficients().asDiagonal() * ch.G;
  }
  for (std::size_t r = 0; r < users.size(); ++r) H.row(r) = user_channel(s, users[r], ch, phi, link);
  return H;
}

}  // namespace irsnet
