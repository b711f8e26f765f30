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

#ifndef IRSNET_ERRORS_HPP_
#define IRSNET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace irsnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that must have full row rank does not. `condition` is the ratio of
// the largest to the smallest singular value (infinity for exact zeros).
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// The per-user QoS floors alone already exceed the power budget.
class QosInfeasibleError : public Error {
 public:
  QosInfeasibleError(const std::string& what, double floor_power, double budget)
      : Error(what), floor_power_(floor_power), budget_(budget) {}
  double floor_power() const { return floor_power_; }
  double budget() const { return budget_; }

 private:
  double floor_power_;
  double budget_;
};

class AssociationInfeasibleError : public Error {
 public:
  using Error::Error;
};

class DegenerateChannelError : public Error {
 public:
  using Error::Error;
};

class OracleTooLargeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace irsnet

#endif  // IRSNET_ERRORS_HPP_
