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

#include "jackpot/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jackpot/error.hpp"
#include "jackpot/summation.hpp"

namespace jackpot {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

void validate_probability_vector(std::span<const double> xs,
                                 std::string_view what,
                                 bool strictly_positive) {
  const std::string name(what);
  require(!xs.empty(), name + ": vector is empty");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = xs[i];
    require(std::isfinite(v), name + ": entry " + std::to_string(i) +
                                  " is not finite");
    if (strictly_positive) {
      require(v > 0.0, name + ": entry " + std::to_string(i) +
                           " must be positive");
    } else {
      require(v >= 0.0, name + ": entry " + std::to_string(i) +
                            " must be nonnegative");
    }
  }
  const double total = compensated_sum(xs);
  require(std::fabs(total - 1.0) <= kProbabilityTolerance,
          name + ": entries must sum to 1 (got " + std::to_string(total) +
              ")");
}

LotteryConfig LotteryConfig::Create(std::vector<double> probabilities,
                                    double carryover, double take) {
  validate_probability_vector(probabilities, "p", /*strictly_positive=*/true);
  require(std::isfinite(carryover) && carryover >= 0.0,
          "a: carryover must be >= 0");
  require(std::isfinite(take) && take >= 0.0 && take < 1.0,
          "x: take must lie in [0, 1)");
  return LotteryConfig(std::move(probabilities), carryover, take);
}

LotteryConfig LotteryConfig::Equiprobable(std::size_t tickets,
                                          double carryover, double take) {
  require(tickets >= 1, "t: ticket count must be >= 1");
  return Create(std::vector<double>(tickets, 1.0 / static_cast<double>(tickets)),
                carryover, take);
}

SyndicateStrategy SyndicateStrategy::Create(double total_stake,
                                            std::vector<double> weights) {
  require(std::isfinite(total_stake) && total_stake >= 0.0,
          "s: total stake must be >= 0");
  validate_probability_vector(weights, "r", /*strictly_positive=*/false);
  std::vector<double> stakes(weights.size());
  std::transform(weights.begin(), weights.end(), stakes.begin(),
                 [total_stake](double w) { return total_stake * w; });
  return SyndicateStrategy(total_stake, std::move(weights), std::move(stakes));
}

SyndicateStrategy SyndicateStrategy::FromStakes(std::vector<double> stakes) {
  require(!stakes.empty(), "stakes: vector is empty");
  for (double v : stakes) {
    require(std::isfinite(v) && v >= 0.0, "stakes: entries must be >= 0");
  }
  const double total = compensated_sum(stakes);
  std::vector<double> weights(stakes.size());
  if (total > 0.0) {
    std::transform(stakes.begin(), stakes.end(), weights.begin(),
                   [total](double v) { return v / total; });
  } else {
    std::fill(weights.begin(), weights.end(),
              1.0 / static_cast<double>(stakes.size()));
  }
  return SyndicateStrategy(total, std::move(weights), std::move(stakes));
}

CrowdStrategy CrowdStrategy::Create(std::uint64_t bettors,
                                    std::vector<double> selection) {
  validate_probability_vector(selection, "q", /*strictly_positive=*/false);
  return CrowdStrategy(bettors, std::move(selection), std::nullopt);
}

CrowdStrategy CrowdStrategy::Uniform(std::uint64_t bettors,
                                     std::size_t tickets) {
  require(tickets >= 1, "t: ticket count must be >= 1");
  return Create(bettors,
                std::vector<double>(tickets, 1.0 / static_cast<double>(tickets)));
}

CrowdStrategy CrowdStrategy::Grouped(std::size_t tickets, std::uint64_t groups,
                                     std::uint64_t tickets_per_group) {
  require(tickets >= 1, "t: ticket count must be >= 1");
  require(tickets_per_group >= 1 && tickets_per_group <= tickets,
          "l: tickets per group must lie in [1, t]");
  std::vector<double> q(tickets, 1.0 / static_cast<double>(tickets));
  return CrowdStrategy(groups * tickets_per_group, std::move(q),
                       GroupStructure{groups, tickets_per_group});
}

void check_compatible(const LotteryConfig& config,
                      const SyndicateStrategy& syndicate,
                      const CrowdStrategy& crowd) {
  require(syndicate.tickets() == config.tickets(),
          "r: length must equal the ticket count t");
  require(crowd.tickets() == config.tickets(),
          "q: length must equal the ticket count t");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kExact:
      return "exact";
    case Method::kClosedForm:
      return "closed-form";
    case Method::kAsymptotic:
      return "asymptotic";
    case Method::kSimulated:
      return "simulated";
    case Method::kEnumerated:
      return "enumerated";
  }
  return "unknown";
}

ExpectationReport make_report(double jackpot_value, double expected_win,
                              double total_stake, Method method) {
  ExpectationReport report;
  report.jackpot = jackpot_value;
  report.expected_win = expected_win;
  report.expected_gain = expected_win - total_stake;
  if (total_stake > 0.0) {
    report.expected_return = report.expected_gain / total_stake;
  }
  report.method = method;
  return report;
}

double jackpot(const LotteryConfig& config, double syndicate_stake,
               double crowd_stake) {
  if (!(syndicate_stake >= 0.0) || !(crowd_stake >= 0.0)) {
    throw DomainError("jackpot: stakes must be >= 0");
  }
  return config.carryover() +
         (syndicate_stake + crowd_stake) * (1.0 - config.take());
}

std::vector<double> uniform_support(std::size_t support, std::size_t tickets) {
  if (support < 1 || support > tickets) {
    throw DomainError("uniform_support: need 1 <= s <= t");
  }
  std::vector<double> weights(tickets, 0.0);
  std::fill_n(weights.begin(), support, 1.0 / static_cast<double>(support));
  return weights;
}

std::vector<std::int64_t> integralize(std::span<const double> weights,
                                      std::int64_t total) {
  if (total < 0) throw DomainError("integralize: total must be >= 0");
  validate_probability_vector(weights, "r", /*strictly_positive=*/false);

  const std::size_t n = weights.size();
  std::vector<std::int64_t> stakes(n);
  std::vector<double> remainders(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = static_cast<double>(total) * weights[i];
    const double whole = std::floor(exact);
    stakes[i] = static_cast<std::int64_t>(whole);
    remainders[i] = exact - whole;
    assigned += stakes[i];
  }

  // The floors cannot overshoot: sum(total * r_i) <= total * (1 + 1e-12).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % n) {
    ++stakes[order[k]];
    ++assigned;
  }
  return stakes;
}

}  // namespace jackpot
