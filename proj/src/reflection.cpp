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

#include "irsnet/reflection.hpp"

#include <numbers>
#include <stdexcept>

namespace irsnet {

cdouble grid_point(int k, int levels) {
  k %= levels;
  if (k < 0) k += levels;
  if ((4 * k) % levels == 0) {
    switch ((4 * k) / levels) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * k / levels);
}

ReflectionState::ReflectionState(std::vector<int> indices, int bits)
    : indices_(std::move(indices)), bits_(bits) {
  if (bits_ < 1 || bits_ > 16) throw std::invalid_argument("phase resolution must be 1..16 bits");
  if (indices_.empty()) throw std::invalid_argument("reflection state needs at least one element");
  for (int i : indices_) {
    if (i < 0 || i >= levels()) throw std::invalid_argument("phase index outside the grid");
  }
}

ReflectionState ReflectionState::zeros(int n, int bits) {
  return ReflectionState(std::vector<int>(n, 0), bits);
}

ReflectionState ReflectionState::random(int n, int bits, Rng& rng) {
  std::vector<int> idx(n);
  for (int& i : idx) i = uniform_int(rng, 0, (1 << bits) - 1);
  return ReflectionState(std::move(idx), bits);
}

double ReflectionState::phase(int n) const {
  return 2.0 * std::numbers::pi * indices_[n] / levels();
}

CVec ReflectionState::coefficients() const {
  CVec c(size());
  for (int n = 0; n < size(); ++n) c(n) = grid_point(indices_[n], levels());
  return c;
}

CVec ReflectionState::support() const { return coefficients().conjugate(); }

CMat ReflectionState::matrix() const { return coefficients().asDiagonal(); }

CVec ReflectionState::vectorized() const {
  const int n = size();
  CVec y = CVec::Zero(static_cast<Eigen::Index>(n) * n);
  const CVec z = support();
  for (int i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i) * n + i) = z(i);
  return y;
}

}  // namespace irsnet
