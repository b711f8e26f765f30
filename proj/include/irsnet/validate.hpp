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

#ifndef IRSNET_VALIDATE_HPP_
#define IRSNET_VALIDATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace irsnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Quick self-checks of every optimizer against the library's reference
// solvers on random instances. Used by the `validate` CLI command; the full
// acceptance suite lives with the tests.
std::vector<CheckResult> run_validation(std::uint64_t seed, int instances = 50);

}  // namespace irsnet

#endif  // IRSNET_VALIDATE_HPP_
