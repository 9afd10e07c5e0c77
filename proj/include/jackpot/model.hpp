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

// Domain types for a pure-jackpot lottery played by one coordinating
// syndicate against a crowd of independent single-ticket bettors.
//
// Money is measured in ticket prices: one ticket costs 1 and fractional
// stakes are allowed everywhere.

#ifndef JACKPOT_MODEL_HPP_
#define JACKPOT_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jackpot {

// Probability vectors must sum to one within this tolerance. They are never
// renormalized on the caller's behalf.
inline constexpr double kProbabilityTolerance = 1e-12;

// Throws ValidationError naming `what` unless `xs` is a probability vector.
// With `strictly_positive` every entry must be > 0, otherwise >= 0.
void validate_probability_vector(std::span<const double> xs,
                                 std::string_view what,
                                 bool strictly_positive);

// Ticket count, true drawing probabilities, carryover pool and take rate.
class LotteryConfig {
 public:
  static LotteryConfig Create(std::vector<double> probabilities,
                              double carryover = 0.0, double take = 0.0);
  static LotteryConfig Equiprobable(std::size_t tickets,
                                    double carryover = 0.0,
                                    double take = 0.0);

  std::size_t tickets() const { return probabilities_.size(); }
  std::span<const double> probabilities() const { return probabilities_; }
  double probability(std::size_t i) const { return probabilities_[i]; }
  double carryover() const { return carryover_; }
  double take() const { return take_; }

 private:
  LotteryConfig(std::vector<double> p, double a, double x)
      : probabilities_(std::move(p)), carryover_(a), take_(x) {}

  std::vector<double> probabilities_;
  double carryover_;
  double take_;
};

// Total stake s spread over the tickets by weights r; ticket i receives
// s * r_i, which need not be an integer.
class SyndicateStrategy {
 public:
  static SyndicateStrategy Create(double total_stake,
                                  std::vector<double> weights);
  // Builds the strategy from explicit per-ticket stakes. An all-zero stake
  // vector yields s = 0 with uniform weights.
  static SyndicateStrategy FromStakes(std::vector<double> stakes);

  std::size_t tickets() const { return weights_.size(); }
  double total_stake() const { return total_stake_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> stakes() const { return stakes_; }
  double stake_on(std::size_t i) const { return stakes_[i]; }

 private:
  SyndicateStrategy(double s, std::vector<double> r, std::vector<double> st)
      : total_stake_(s), weights_(std::move(r)), stakes_(std::move(st)) {}

  double total_stake_;
  std::vector<double> weights_;
  std::vector<double> stakes_;
};

// g groups that each bet l distinct tickets, so the crowd holds c = g * l.
struct GroupStructure {
  std::uint64_t groups = 0;
  std::uint64_t tickets_per_group = 0;
};

// c bettors each picking one ticket independently from q. With a group
// structure the crowd instead consists of g groups, each drawing l distinct
// tickets uniformly at random; q is then required to be uniform.
class CrowdStrategy {
 public:
  static CrowdStrategy Create(std::uint64_t bettors,
                              std::vector<double> selection);
  static CrowdStrategy Uniform(std::uint64_t bettors, std::size_t tickets);
  static CrowdStrategy Grouped(std::size_t tickets, std::uint64_t groups,
                               std::uint64_t tickets_per_group);

  std::size_t tickets() const { return selection_.size(); }
  std::uint64_t bettors() const { return bettors_; }
  std::span<const double> selection() const { return selection_; }
  double selection(std::size_t i) const { return selection_[i]; }
  const std::optional<GroupStructure>& groups() const { return groups_; }

 private:
  CrowdStrategy(std::uint64_t c, std::vector<double> q,
                std::optional<GroupStructure> g)
      : bettors_(c), selection_(std::move(q)), groups_(g) {}

  std::uint64_t bettors_;
  std::vector<double> selection_;
  std::optional<GroupStructure> groups_;
};

// Throws ValidationError unless all three objects describe the same number
// of tickets.
void check_compatible(const LotteryConfig& config,
                      const SyndicateStrategy& syndicate,
                      const CrowdStrategy& crowd);

enum class Method { kExact, kClosedForm, kAsymptotic, kSimulated, kEnumerated };

std::string_view to_string(Method method);

struct ExpectationReport {
  double jackpot = 0.0;
  double expected_win = 0.0;
  double expected_gain = 0.0;
  // Undefined (empty) when the syndicate stakes nothing.
  std::optional<double> expected_return;
  std::optional<double> crowd_expected_return;
  std::optional<double> carryover_probability;
  Method method = Method::kExact;
};

// Fills gain and return from the jackpot and expected win.
ExpectationReport make_report(double jackpot_value, double expected_win,
                              double total_stake, Method method);

// a + (s + c)(1 - x)
double jackpot(const LotteryConfig& config, double syndicate_stake,
               double crowd_stake);

// Weight 1/s on the first s tickets and 0 elsewhere.
std::vector<double> uniform_support(std::size_t support, std::size_t tickets);

// Integer stakes summing to `total`: floor of total * r_i, then the
// leftover units go to the largest remainders, lowest index first on ties.
std::vector<std::int64_t> integralize(std::span<const double> weights,
                                      std::int64_t total);

}  // namespace jackpot

#endif  // JACKPOT_MODEL_HPP_
