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

#ifndef JACKPOT_RANDOM_HPP_
#define JACKPOT_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace jackpot {

// Stafford's "mix13" finalizer, as used by SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output n of stream k under seed s is a pure
// function of (s, k, n), so any stream can be positioned or replayed without
// touching the others. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) + kGamma * (stream + 1))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix64(key_ + kGamma * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t position() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Draws an index with the given (nonnegative, unit-sum) weights. Small
// supports use a linear scan of the cumulative weights; larger ones use
// Vose's alias tables.
class DiscreteSampler {
 public:
  static constexpr std::size_t kAliasThreshold = 64;

  explicit DiscreteSampler(std::span<const double> weights);

  std::size_t operator()(CounterRng& rng) const;
  std::size_t size() const { return size_; }
  bool uses_alias() const { return !alias_.empty(); }

 private:
  std::size_t size_;
  std::vector<double> cumulative_;
  std::vector<double> threshold_;
  std::vector<std::size_t> alias_;
};

}  // namespace jackpot

#endif  // JACKPOT_RANDOM_HPP_
