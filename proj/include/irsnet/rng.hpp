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

#ifndef IRSNET_RNG_HPP_
#define IRSNET_RNG_HPP_

#include <cstdint>
#include <random>

namespace irsnet {

using Rng = std::mt19937_64;

// Independent streams per purpose so that, for a given trial, channels do
// not depend on how many draws an algorithm consumed.
enum class Stream : std::uint64_t {
  kScene = 1,
  kChannel = 2,
  kAlgorithm = 3,
  kTest = 4,
};

// splitmix64 mixing of (master, stream, index).
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index);

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

double uniform(Rng& rng, double lo, double hi);
double normal(Rng& rng, double mean, double stddev);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

}  // namespace irsnet

#endif  // IRSNET_RNG_HPP_
