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

#ifndef IRSNET_CHANNEL_HPP_
#define IRSNET_CHANNEL_HPP_

#include <vector>

#include "irsnet/config.hpp"
#include "irsnet/linalg.hpp"
#include "irsnet/reflection.hpp"
#include "irsnet/rng.hpp"

namespace irsnet {

struct Geometry {
  std::vector<Point2> bs_positions;
  Point2 irs_position;
  std::vector<Point2> user_positions;
};

// Per-trial channel draws. h_d[s] is K x M for every BS s except the
// IRS-assisted one, whose entry is empty; its users are reached through
// h_r * Phi * G, or through blocked_direct when the IRS is absent.
struct ChannelSet {
  int irs_bs = 0;
  CMat G;               // N x M, BS irs_bs -> IRS
  CMat h_r;             // K x N, IRS -> users
  std::vector<CMat> h_d;
  CMat blocked_direct;  // K x M, NLOS-only BS irs_bs -> users
};

// Which link serves the IRS-assisted BS when assembling channel matrices.
enum class Link { kViaIrs, kBlocked };

// (1/sqrt(n)) exp(j 2 pi d_over_lambda m sin(theta)), m = 0..n-1.
CVec ula_steering(double theta, int n, double d_over_lambda);

double pathloss_db(double distance_m, const PathLossParams& pl, double shadow_db);

// CN(0, 10^(-kappa/10)).
cdouble complex_gain(double kappa_db, Rng& rng);

// Boresight directions used by AngleModel::kGeometric. Every BS faces the
// user-area center except the IRS-assisted one, which faces the IRS; the IRS
// faces the midpoint between its BS and the user-area center.
double bs_boresight(const Geometry& geom, const SystemConfig& cfg, int s);
double irs_boresight(const Geometry& geom, const SystemConfig& cfg);

// Angle of `to` seen from `from`, relative to `boresight`, wrapped to (-pi, pi].
double relative_angle(const Point2& from, const Point2& to, double boresight);

CMat gen_bs_irs_channel(const Geometry& geom, const SystemConfig& cfg, Rng& rng);
CRow gen_irs_user_channel(const Geometry& geom, int k, const SystemConfig& cfg, Rng& rng);
CRow gen_direct_channel(const Geometry& geom, int j, int k, const SystemConfig& cfg, Rng& rng);
CRow gen_blocked_direct_channel(const Geometry& geom, int k, const SystemConfig& cfg, Rng& rng);

ChannelSet gen_channels(const Geometry& geom, const SystemConfig& cfg, Rng& rng);

// h_r diag(e^{j phi}) G.
CRow cascaded_channel(const CRow& h_r, const ReflectionState& phi, const CMat& G);

// Per-user channel row of user k toward BS s.
CRow user_channel(int s, int k, const ChannelSet& ch, const ReflectionState& phi,
                  Link link = Link::kViaIrs);

// Rows of `served`, sorted ascending, toward BS s.
CMat assemble_channel_matrix(int s, const std::vector<int>& served, const ChannelSet& ch,
                             const ReflectionState& phi, Link link = Link::kViaIrs);

}  // namespace irsnet

#endif  // IRSNET_CHANNEL_HPP_
