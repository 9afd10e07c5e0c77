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


#include "jackpot/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "jackpot/error.hpp"
#include "jackpot/random.hpp"
#include "jackpot/summation.hpp"

namespace jackpot {
namespace {

// Welford accumulator for the syndicate return plus plain sums for the rest.
struct PartitionStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  CompensatedSum crowd_return;
  CompensatedSum gain;
  std::uint64_t carryovers = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  // Chan et al. pairwise update.
  void merge(const PartitionStats& other) {
    if (other.n == 0) return;
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double total = na + nb;
    const double delta = other.mean - mean;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    n += other.n;
    crowd_return += other.crowd_return.value();
    gain += other.gain.value();
    carryovers += other.carryovers;
  }
};

class TrialRunner {
 public:
  TrialRunner(const LotteryConfig& config, const SyndicateStrategy& syndicate,
              const CrowdStrategy& crowd)
      : syndicate_(syndicate),
        crowd_(crowd),
        draw_(config.probabilities()),
        pick_(crowd.selection()),
        pot_(jackpot(config, syndicate.total_stake(),
                     static_cast<double>(crowd.bettors()))) {}

  PartitionStats run(std::uint64_t seed, std::uint64_t partition,
                     std::uint64_t trials) const {
    CounterRng rng(seed, partition);
    PartitionStats stats;
    std::vector<std::size_t> order(crowd_.tickets());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const double s = syndicate_.total_stake();
    const double c = static_cast<double>(crowd_.bettors());
    for (std::uint64_t i = 0; i < trials; ++i) {
      const std::size_t drawn = draw_(rng);
      const double held = static_cast<double>(crowd_holding(drawn, rng, order));
      const double mine = syndicate_.stake_on(drawn);
      double win = 0.0;
      double crowd_win = 0.0;
      if (mine + held > 0.0) {
        win = pot_ * mine / (mine + held);
        crowd_win = pot_ * held / (mine + held);
      } else {
        ++stats.carryovers;
      }
      stats.add(s > 0.0 ? (win - s) / s : 0.0);
      stats.gain += win - s;
      stats.crowd_return += c > 0.0 ? (crowd_win - c) / c : 0.0;
    }
    return stats;
  }

 private:
  // Number of crowd tickets on `drawn`.
  std::uint64_t crowd_holding(std::size_t drawn, CounterRng& rng,
                              std::vector<std::size_t>& order) const {
    std::uint64_t held = 0;
    if (const auto& groups = crowd_.groups()) {
      const std::size_t t = order.size();
      for (std::uint64_t g = 0; g < groups->groups; ++g) {
        // Partial Fisher-Yates: the first l slots become a uniform l-subset.
        for (std::size_t j = 0; j < groups->tickets_per_group; ++j) {
          const std::size_t k = j + static_cast<std::size_t>(rng.below(t - j));
          std::swap(order[j], order[k]);
          if (order[j] == drawn) ++held;
        }
      }
      return held;
    }
    for (std::uint64_t b = 0; b < crowd_.bettors(); ++b) {
      if (pick_(rng) == drawn) ++held;
    }
    return held;
  }

  const SyndicateStrategy& syndicate_;
  const CrowdStrategy& crowd_;
  DiscreteSampler draw_;
  DiscreteSampler pick_;
  double pot_;
};

// base^exponent, saturating at limit + 1.
double bounded_power(double base, std::uint64_t exponent, double limit) {
  double out = 1.0;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    out *= base;
    if (out > limit) return limit + 1.0;
  }
  return out;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

struct EnumerationTotals {
  CompensatedSum win;
  CompensatedSum crowd_win;
  CompensatedSum carryover;
};

// Adds the contribution of one crowd configuration with the given weight.
void accumulate(const LotteryConfig& config, const SyndicateStrategy& syndicate,
                std::span<const std::uint64_t> counts, double weight,
                double pot, EnumerationTotals& totals) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double mine = syndicate.stake_on(i);
    const double held = static_cast<double>(counts[i]);
    const double w = weight * config.probability(i);
    if (mine + held > 0.0) {
      totals.win += w * pot * mine / (mine + held);
      totals.crowd_win += w * pot * held / (mine + held);
    } else {
      totals.carryover += w;
    }
  }
}

void enumerate_independent(const LotteryConfig& config,
                           const SyndicateStrategy& syndicate,
                           const CrowdStrategy& crowd, double pot,
                           EnumerationTotals& totals) {
  const std::size_t t = crowd.tickets();
  const std::uint64_t c = crowd.bettors();
  std::vector<double> factorial(c + 1, 1.0);
  for (std::uint64_t k = 1; k <= c; ++k) {
    factorial[k] = factorial[k - 1] * static_cast<double>(k);
  }
  // Walk all count vectors with sum c in lexicographic order.
  std::vector<std::uint64_t> counts(t, 0);
  counts[t - 1] = c;
  for (;;) {
    double weight = factorial[c];
    for (std::size_t i = 0; i < t; ++i) {
      weight /= factorial[counts[i]];
      for (std::uint64_t k = 0; k < counts[i]; ++k) weight *= crowd.selection(i);
    }
    if (weight > 0.0) {
      accumulate(config, syndicate, counts, weight, pot, totals);
    }
    // Next composition: move one unit from the last slot leftwards.
    std::size_t j = t - 1;
    while (j > 0 && counts[j] == 0) --j;
    if (j == 0) break;
    const std::uint64_t rest = counts[j] - 1;
    counts[j] = 0;
    ++counts[j - 1];
    counts[t - 1] = rest;
  }
}

void enumerate_groups(const LotteryConfig& config,
                      const SyndicateStrategy& syndicate,
                      const GroupStructure& groups, std::size_t t, double pot,
                      EnumerationTotals& totals) {
  // All l-subsets of the tickets as index lists.
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> pick(groups.tickets_per_group);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  const std::size_t l = pick.size();
  for (;;) {
    subsets.push_back(pick);
    std::size_t j = l;
    while (j > 0 && pick[j - 1] == t - l + (j - 1)) --j;
    if (j == 0) break;
    ++pick[j - 1];
    for (std::size_t k = j; k < l; ++k) pick[k] = pick[k - 1] + 1;
  }
  const double weight =
      std::pow(static_cast<double>(subsets.size()),
               -static_cast<double>(groups.groups));
  std::vector<std::size_t> digits(groups.groups, 0);
  std::vector<std::uint64_t> counts(t);
  for (;;) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t d : digits) {
      for (std::size_t i : subsets[d]) ++counts[i];
    }
    accumulate(config, syndicate, counts, weight, pot, totals);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == subsets.size()) digits[k++] = 0;
    if (k == digits.size()) break;
  }
}

}  // namespace

SimulationResult simulate(const LotteryConfig& config,
                          const SyndicateStrategy& syndicate,
                          const CrowdStrategy& crowd, std::uint64_t n_trials,
                          std::uint64_t seed, unsigned workers) {
  check_compatible(config, syndicate, crowd);
  if (n_trials < 1) throw ValidationError("n_trials: must be >= 1");
  const TrialRunner runner(config, syndicate, crowd);
  const std::uint64_t partitions =
      (n_trials + kTrialsPerPartition - 1) / kTrialsPerPartition;
  std::vector<PartitionStats> parts(partitions);
  auto trials_in = [&](std::uint64_t k) {
    return std::min(kTrialsPerPartition, n_trials - k * kTrialsPerPartition);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, partitions));
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < partitions; ++k) {
      parts[k] = runner.run(seed, k, trials_in(k));
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t k = next++; k < partitions; k = next++) {
          parts[k] = runner.run(seed, k, trials_in(k));
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  PartitionStats total;
  for (const auto& part : parts) total.merge(part);
  SimulationResult out;
  const double n = static_cast<double>(n_trials);
  out.n_trials = n_trials;
  out.seed = seed;
  out.mean_syndicate_return = total.mean;
  out.std_error = n_trials > 1 ? std::sqrt(total.m2 / (n - 1.0) / n) : 0.0;
  out.mean_crowd_return = total.crowd_return.value() / n;
  out.carryover_frequency = static_cast<double>(total.carryovers) / n;
  out.mean_syndicate_gain = total.gain.value() / n;
  return out;
}

ExpectationReport enumerate_exact(const LotteryConfig& config,
                                  const SyndicateStrategy& syndicate,
                                  const CrowdStrategy& crowd) {
  check_compatible(config, syndicate, crowd);
  const std::size_t t = config.tickets();
  const auto& groups = crowd.groups();
  const double size =
      groups ? bounded_power(static_cast<double>(
                                 choose(t, groups->tickets_per_group)),
                             groups->groups, kMaxEnumeratedConfigurations)
             : bounded_power(static_cast<double>(t), crowd.bettors(),
                             kMaxEnumeratedConfigurations);
  if (size > kMaxEnumeratedConfigurations) {
    throw SizeError("enumerate_exact: more than 1e7 crowd configurations");
  }

  const double c = static_cast<double>(crowd.bettors());
  const double pot = jackpot(config, syndicate.total_stake(), c);
  EnumerationTotals totals;
  if (groups) {
    enumerate_groups(config, syndicate, *groups, t, pot, totals);
  } else {
    enumerate_independent(config, syndicate, crowd, pot, totals);
  }

  ExpectationReport report = make_report(pot, totals.win.value(),
                                         syndicate.total_stake(),
                                         Method::kEnumerated);
  if (crowd.bettors() > 0) {
    report.crowd_expected_return = (totals.crowd_win.value() - c) / c;
  }
  report.carryover_probability = totals.carryover.value();
  return report;
}

}  // namespace jackpot
