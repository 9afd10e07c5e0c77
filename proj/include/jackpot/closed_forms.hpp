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

// Closed-form results for equiprobable lotteries with no take and no
// carryover, plus two older approximations used for comparison.

#ifndef JACKPOT_CLOSED_FORMS_HPP_
#define JACKPOT_CLOSED_FORMS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace jackpot {

// Expected win of a syndicate holding one each of s distinct tickets when
// the crowd of c picks with probabilities q:
//
//   ((c + s) / (c + 1)) (s / t) (1 / t) sum_i (1 - (1 - q_i)^(c + 1)) / q_i
//
// Exact for uniform q. For non-uniform q it is the average over a uniformly
// random placement of the s tickets. s = 0 gives 0.
double lemma1_expected_win(std::uint64_t tickets, std::uint64_t crowd,
                           std::uint64_t support, std::span<const double> q);

// Return of s distinct tickets against a uniform crowd:
// ((c + s) / (c + 1)) (1 - (1 - 1/t)^(c + 1)) - 1.
double uniform_return(std::uint64_t tickets, std::uint64_t crowd,
                      std::uint64_t support);

// Expected gain of s distinct tickets against a uniform crowd; the quadratic
// whose minimum and root the breakeven report describes.
double uniform_gain(std::uint64_t tickets, std::uint64_t crowd, double support);

struct BreakevenReport {
  double y = 0.0;       // (1 - 1/t)^(c + 1)
  double s_star = 0.0;  // stake minimizing the expected gain
  double g_min = 0.0;   // expected gain at s_star
  double s_zero = 0.0;  // positive root of the gain, 2 * s_star
  std::uint64_t first_profitable_integer = 0;
};

BreakevenReport breakeven(std::uint64_t tickets, std::uint64_t crowd);

enum class PmfMode { kBinomial, kPoisson };

struct Table1Row {
  std::uint64_t k = 0;
  double probability = 0.0;
  double payoff_full = 0.0;        // syndicate holds every ticket (s = t)
  double contribution_full = 0.0;
  double payoff_single = 0.0;      // syndicate holds one ticket (s = 1)
  double contribution_single = 0.0;
};

struct Table1 {
  std::vector<Table1Row> rows;
  double sum_contribution_full = 0.0;
  double sum_contribution_single = 0.0;
};

// Contribution of each crowd count k = 0..k_max to the expected win of the
// full-coverage and single-ticket syndicates. Poisson mode uses mean c / t.
Table1 table1(std::uint64_t tickets, std::uint64_t crowd, std::uint64_t k_max,
              PmfMode mode = PmfMode::kPoisson);

struct GroupStructureReport {
  double adjusted_win = 0.0;
  double ratio_to_ungrouped = 0.0;
};

// Approximate win when the crowd is g groups each betting l distinct
// tickets, and its ratio to the ungrouped (l = 1) crowd of the same size.
GroupStructureReport group_adjusted_win(std::uint64_t tickets,
                                        std::uint64_t crowd,
                                        std::uint64_t stake,
                                        std::uint64_t groups,
                                        std::uint64_t tickets_per_group);

// Exact gain of staking n on every ticket against a uniform crowd of c.
double multiples_gain(std::uint64_t n, std::uint64_t tickets,
                      std::uint64_t crowd);

// n = floor(s / t) on every ticket plus one more on the first s - n t.
std::vector<std::int64_t> optimal_budget_allocation(std::uint64_t stake,
                                                    std::uint64_t tickets);

inline constexpr double kDefaultTakeAdjustment = 0.45;

// base * F_1 * ... * F_m for unpopular-number factors F_j > 0.
double unpopular_factor_return(std::span<const double> factors,
                               double base = kDefaultTakeAdjustment);

struct MathesonInputs {
  double syndicate_tickets = 0.0;  // W
  double crowd_tickets = 0.0;      // N
  double carryover = 0.0;          // R
  double jackpot_fraction = 1.0;   // k
  double ticket_cost = 1.0;
  double win_probability = 0.0;    // p
};

// (W / N) [R + k cost (W + N)] (1 - exp(-p N)).
double matheson_expected_value(const MathesonInputs& in);

}  // namespace jackpot

#endif  // JACKPOT_CLOSED_FORMS_HPP_
