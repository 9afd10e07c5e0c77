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

#include "jackpot/random.hpp"

#include "jackpot/error.hpp"

namespace jackpot {

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("CounterRng::below: n must be positive");
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t floor = (0 - n) % n;
    while (low < floor) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights)
    : size_(weights.size()) {
  if (size_ == 0) throw DomainError("DiscreteSampler: no outcomes");
  if (size_ <= kAliasThreshold) {
    cumulative_.resize(size_);
    double running = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
      running += weights[i];
      cumulative_[i] = running;
    }
    return;
  }

  // Vose's construction over weights scaled to mean 1.
  threshold_.assign(size_, 0.0);
  alias_.assign(size_, 0);
  std::vector<double> scaled(size_);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < size_; ++i) {
    scaled[i] = weights[i] * static_cast<double>(size_);
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t lo = small.back();
    small.pop_back();
    const std::size_t hi = large.back();
    threshold_[lo] = scaled[lo];
    alias_[lo] = hi;
    scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
    if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
  for (std::size_t i : large) threshold_[i] = 1.0;
  for (std::size_t i : small) threshold_[i] = 1.0;
}

std::size_t DiscreteSampler::operator()(CounterRng& rng) const {
  if (alias_.empty()) {
    const double u = rng.uniform() * cumulative_.back();
    for (std::size_t i = 0; i + 1 < size_; ++i) {
      if (u < cumulative_[i]) return i;
    }
    return size_ - 1;
  }
  const std::size_t column = rng.below(size_);
  return rng.uniform() < threshold_[column] ? column : alias_[column];
}

}  // namespace jackpot
