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

#ifndef IRSNET_REFLECTION_HPP_
#define IRSNET_REFLECTION_HPP_

#include <vector>

#include "irsnet/linalg.hpp"
#include "irsnet/rng.hpp"

namespace irsnet {

// Discrete IRS configuration: element n applies exp(j 2 pi idx_n / 2^b).
class ReflectionState {
 public:
  ReflectionState(std::vector<int> indices, int bits);

  static ReflectionState zeros(int n, int bits);
  static ReflectionState random(int n, int bits, Rng& rng);

  int size() const { return static_cast<int>(indices_.size()); }
  int bits() const { return bits_; }
  int levels() const { return 1 << bits_; }
  const std::vector<int>& indices() const { return indices_; }
  int index(int n) const { return indices_[n]; }

  double phase(int n) const;
  // exp(j phi_n).
  CVec coefficients() const;
  // exp(-j phi_n): the diagonal of Phi^{-1} = Phi^H.
  CVec support() const;
  // Diagonal Phi as a dense N x N matrix.
  CMat matrix() const;
  // y = vec(Phi^{-1}), length N^2, nonzero only at n * N + n.
  CVec vectorized() const;

  bool operator==(const ReflectionState& other) const = default;

 private:
  std::vector<int> indices_;
  int bits_;
};

// exp(j 2 pi k / levels), exact at quarter turns.
cdouble grid_point(int k, int levels);

}  // namespace irsnet

#endif  // IRSNET_REFLECTION_HPP_
