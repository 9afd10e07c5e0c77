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

#include "jackpot/closed_forms.hpp"

#include <algorithm>
#include <cmath>

#include "jackpot/error.hpp"
#include "jackpot/exact_engine.hpp"
#include "jackpot/summation.hpp"

namespace jackpot {
namespace {

// 1 - (1 - 1/t)^(c + 1): probability that at least one of c + 1 uniform
// picks lands on a given ticket.
double hit_probability(std::uint64_t tickets, std::uint64_t crowd) {
  const double m = static_cast<double>(crowd) + 1.0;
  return -std::expm1(m * std::log1p(-1.0 / static_cast<double>(tickets)));
}

double poisson_pmf(double mean, std::uint64_t k) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  const double x = static_cast<double>(k);
  return std::exp(-mean + x * std::log(mean) - std::lgamma(x + 1.0));
}

}  // namespace

double lemma1_expected_win(std::uint64_t tickets, std::uint64_t crowd,
                           std::uint64_t support, std::span<const double> q) {
  if (tickets < 1) throw DomainError("lemma1_expected_win: need t >= 1");
  if (support > tickets) {
    throw DomainError("lemma1_expected_win: need s <= t");
  }
  if (q.size() != tickets) {
    throw DomainError("lemma1_expected_win: q must have length t");
  }
  if (support == 0) return 0.0;
  CompensatedSum acc;
  for (double qi : q) {
    if (!(qi > 0.0)) {
      throw DomainError("lemma1_expected_win: every q_i must be > 0");
    }
    acc += expected_share_factor(crowd, qi).value;
  }
  const double t = static_cast<double>(tickets);
  const double s = static_cast<double>(support);
  const double c = static_cast<double>(crowd);
  // (1 / q)(1 - (1 - q)^(c + 1)) = (c + 1) E[1 / (1 + X)]
  return (c + s) * (s / t) * (acc.value() / t);
}

double uniform_return(std::uint64_t tickets, std::uint64_t crowd,
                      std::uint64_t support) {
  if (support < 1 || support > tickets) {
    throw DomainError("uniform_return: need 1 <= s <= t");
  }
  const double c = static_cast<double>(crowd);
  const double s = static_cast<double>(support);
  return (c + s) / (c + 1.0) * hit_probability(tickets, crowd) - 1.0;
}

double uniform_gain(std::uint64_t tickets, std::uint64_t crowd,
                    double support) {
  if (tickets < 1) throw DomainError("uniform_gain: need t >= 1");
  const double c = static_cast<double>(crowd);
  return (c + support) * support / (c + 1.0) * hit_probability(tickets, crowd) -
         support;
}

BreakevenReport breakeven(std::uint64_t tickets, std::uint64_t crowd) {
  if (tickets < 2 || crowd < 2) {
    throw DomainError("breakeven: need t >= 2 and c >= 2");
  }
  const double c = static_cast<double>(crowd);
  const double hit = hit_probability(tickets, crowd);
  BreakevenReport out;
  out.y = 1.0 - hit;
  out.s_star = (1.0 + c * out.y) / (2.0 * hit);
  out.g_min = -0.25 * (1.0 + c * out.y) * (1.0 + c * out.y) / (hit * (1.0 + c));
  out.s_zero = 2.0 * out.s_star;

  // Search around the root with exact gains rather than rounding s_zero.
  auto gain = [&](std::uint64_t s) {
    return uniform_gain(tickets, crowd, static_cast<double>(s));
  };
  std::uint64_t s = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::floor(out.s_zero)));
  while (s > 1 && gain(s - 1) > 0.0) --s;
  while (!(gain(s) > 0.0)) ++s;
  out.first_profitable_integer = s;
  return out;
}

Table1 table1(std::uint64_t tickets, std::uint64_t crowd, std::uint64_t k_max,
              PmfMode mode) {
  if (tickets < 1) throw DomainError("table1: need t >= 1");
  if (k_max > crowd) throw DomainError("table1: need k_max <= c");
  const double t = static_cast<double>(tickets);
  const double c = static_cast<double>(crowd);
  const double mean = c / t;

  Table1 out;
  CompensatedSum full;
  CompensatedSum single;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    Table1Row row;
    row.k = k;
    row.probability = mode == PmfMode::kPoisson
                          ? poisson_pmf(mean, k)
                          : binom_pmf(crowd, 1.0 / t, k);
    const double sharers = 1.0 + static_cast<double>(k);
    row.payoff_full = (c + t) / sharers;
    row.contribution_full = row.payoff_full * row.probability;
    row.payoff_single = (c + 1.0) / sharers;
    // A single ticket is the winner only with probability 1 / t.
    row.contribution_single = row.payoff_single * row.probability / t;
    full += row.contribution_full;
    single += row.contribution_single;
    out.rows.push_back(row);
  }
  out.sum_contribution_full = full.value();
  out.sum_contribution_single = single.value();
  return out;
}

GroupStructureReport group_adjusted_win(std::uint64_t tickets,
                                        std::uint64_t crowd,
                                        std::uint64_t stake,
                                        std::uint64_t groups,
                                        std::uint64_t tickets_per_group) {
  if (tickets_per_group < 1 || tickets_per_group > tickets) {
    throw DomainError("group_adjusted_win: need 1 <= l <= t");
  }
  if (groups * tickets_per_group != crowd) {
    throw DomainError("group_adjusted_win: need g * l = c");
  }
  const double t = static_cast<double>(tickets);
  const double c = static_cast<double>(crowd);
  const double s = static_cast<double>(stake);
  const double l = static_cast<double>(tickets_per_group);
  GroupStructureReport out;
  out.adjusted_win = (c + s) * s / (c + l) * -std::expm1(-(c + l) / t);
  out.ratio_to_ungrouped = (c + 1.0) / (c + l) * std::expm1(-(c + l) / t) /
                           std::expm1(-(c + 1.0) / t);
  return out;
}

double multiples_gain(std::uint64_t n, std::uint64_t tickets,
                      std::uint64_t crowd) {
  if (n < 1 || tickets < 1) {
    throw DomainError("multiples_gain: need n >= 1 and t >= 1");
  }
  const double stake = static_cast<double>(n);
  const double total = stake * static_cast<double>(tickets);
  const double share =
      share_expectation(stake, crowd, 1.0 / static_cast<double>(tickets)).value;
  return (total + static_cast<double>(crowd)) * share - total;
}

std::vector<std::int64_t> optimal_budget_allocation(std::uint64_t stake,
                                                    std::uint64_t tickets) {
  if (stake < 1 || tickets < 1) {
    throw DomainError("optimal_budget_allocation: need s >= 1 and t >= 1");
  }
  const auto n = static_cast<std::int64_t>(stake / tickets);
  const std::uint64_t extra = stake % tickets;
  std::vector<std::int64_t> out(tickets, n);
  for (std::uint64_t i = 0; i < extra; ++i) ++out[i];
  return out;
}

double unpopular_factor_return(std::span<const double> factors, double base) {
  double product = base;
  for (double f : factors) {
    if (!(f > 0.0)) {
      throw DomainError("unpopular_factor_return: factors must be > 0");
    }
    product *= f;
  }
  return product;
}

double matheson_expected_value(const MathesonInputs& in) {
  if (!(in.crowd_tickets >= 1.0)) {
    throw DomainError("matheson_expected_value: need N >= 1");
  }
  if (!(in.syndicate_tickets >= 0.0)) {
    throw DomainError("matheson_expected_value: need W >= 0");
  }
  const double W = in.syndicate_tickets;
  const double N = in.crowd_tickets;
  const double pool =
      in.carryover + in.jackpot_fraction * in.ticket_cost * (W + N);
  return W / N * pool * -std::expm1(-in.win_probability * N);
}

}  // namespace jackpot
