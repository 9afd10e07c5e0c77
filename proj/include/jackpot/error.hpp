// Copyright 2026 The Jackpot Authors.
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

#ifndef JACKPOT_ERROR_HPP_
#define JACKPOT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace jackpot {

// Thrown when a domain object fails one of its construction invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when a brute-force computation would exceed its size budget.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace jackpot

#endif  // JACKPOT_ERROR_HPP_
