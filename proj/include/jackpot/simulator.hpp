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


// Verification oracles that share no algebra with the exact engine: seeded
// Monte Carlo over drawings and brute-force enumeration of every crowd
// configuration.

#ifndef JACKPOT_SIMULATOR_HPP_
#define JACKPOT_SIMULATOR_HPP_

#include <cstdint>

#include "jackpot/model.hpp"

namespace jackpot {

struct SimulationResult {
  std::uint64_t n_trials = 0;
  double mean_syndicate_return = 0.0;
  // Standard error of mean_syndicate_return.
  double std_error = 0.0;
  double mean_crowd_return = 0.0;
  double carryover_frequency = 0.0;
  std::uint64_t seed = 0;
  double mean_syndicate_gain = 0.0;
};

// Trials are cut into fixed-size partitions; partition k draws from stream k
// of `seed`. Partition statistics are merged in index order, so the result
// does not depend on `workers`.
inline constexpr std::uint64_t kTrialsPerPartition = 65536;

// Per trial: draw D ~ p, let the crowd pick its tickets (c independent picks
// from q, or g groups of l distinct uniform tickets) and pay the jackpot out
// in proportion to the holdings of ticket D. Returns are per unit staked; a
// syndicate that stakes nothing has return 0. workers = 0 means one per
// hardware thread.
SimulationResult simulate(const LotteryConfig& config,
                          const SyndicateStrategy& syndicate,
                          const CrowdStrategy& crowd, std::uint64_t n_trials,
                          std::uint64_t seed, unsigned workers = 1);

// Largest number of crowd configurations enumerate_exact will visit.
inline constexpr double kMaxEnumeratedConfigurations = 1e7;

// Sums over every crowd configuration (count vectors with multinomial
// weights; for grouped crowds every choice of l-subset per group) and every
// drawn ticket. Throws SizeError when t^c (C(t, l)^g for groups) exceeds
// kMaxEnumeratedConfigurations.
ExpectationReport enumerate_exact(const LotteryConfig& config,
                                  const SyndicateStrategy& syndicate,
                                  const CrowdStrategy& crowd);

}  // namespace jackpot

#endif  // JACKPOT_SIMULATOR_HPP_
