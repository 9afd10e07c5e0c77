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

#include "jackpot/exact_engine.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "jackpot/error.hpp"
#include "jackpot/summation.hpp"

namespace jackpot {
namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;  // log(sqrt(2 pi))

// log(n!) - log(sqrt(2 pi n) (n / e)^n), the error of Stirling's formula.
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    // n! is exact in a double up to 22!.
    double factorial = 1.0;
    for (int i = 2; i <= static_cast<int>(n); ++i) factorial *= i;
    return std::log(factorial) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
  }
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x, computed without cancellation when x ~ np.
double deviance_term(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

// Binomial marginal of the crowd's holdings of ticket i.
struct Marginal {
  std::uint64_t trials;
  double probability;
};

Marginal crowd_marginal(const CrowdStrategy& crowd, std::size_t i) {
  if (const auto& groups = crowd.groups()) {
    return {groups->groups, static_cast<double>(groups->tickets_per_group) /
                                static_cast<double>(crowd.tickets())};
  }
  return {crowd.bettors(), crowd.selection(i)};
}

template <typename Payoff>
ShareKernelResult binomial_expectation(std::uint64_t trials, double q,
                                       Payoff payoff) {
  CompensatedSum acc;
  for (std::uint64_t k = 0; k <= trials; ++k) {
    const double w = payoff(static_cast<double>(k));
    if (w != 0.0) acc += binom_pmf(trials, q, k) * w;
  }
  return {acc.value(), trials + 1, 0.0};
}

struct TicketShares {
  double syndicate;
  double crowd;
  double carryover;
};

TicketShares ticket_shares(double stake, Marginal m) {
  TicketShares out{};
  out.syndicate = share_expectation(stake, m.trials, m.probability).value;
  out.crowd = crowd_share_expectation(stake, m.trials, m.probability).value;
  out.carryover = stake > 0.0 ? 0.0 : binom_pmf(m.trials, m.probability, 0);
  return out;
}

}  // namespace

double binom_pmf(std::uint64_t c, double q, std::uint64_t k) {
  if (k > c) throw DomainError("binom_pmf: k must lie in [0, c]");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("binom_pmf: q must lie in [0, 1]");
  }
  const double n = static_cast<double>(c);
  const double x = static_cast<double>(k);
  const double p = q;
  const double r = 1.0 - q;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (r == 0.0) return k == c ? 1.0 : 0.0;
  if (k == 0) {
    if (c == 0) return 1.0;
    const double lc = p < 0.1 ? -deviance_term(n, n * r) - n * p
                              : n * std::log1p(-p);
    return std::exp(lc);
  }
  if (k == c) {
    const double lc = r < 0.1 ? -deviance_term(n, n * p) - n * r
                              : n * std::log(p);
    return std::exp(lc);
  }
  const double lc = stirling_error(n) - stirling_error(x) -
                    stirling_error(n - x) - deviance_term(x, n * p) -
                    deviance_term(n - x, n * r);
  const double lf = 2.0 * kLnSqrt2Pi + std::log(x) + std::log1p(-x / n);
  return std::exp(lc - 0.5 * lf);
}

ShareKernelResult expected_share_factor(std::uint64_t c, double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("expected_share_factor: q must lie in (0, 1]");
  }
  const double m = static_cast<double>(c) + 1.0;
  // 1 - (1 - q)^(c + 1) without cancellation for small q.
  const double hit = -std::expm1(m * std::log1p(-q));
  return {hit / (m * q), 0, 0.0};
}

PoissonShareApprox poisson_share_approx(std::uint64_t c, double q,
                                        PoissonMode mode) {
  if (c < 1) throw DomainError("poisson_share_approx: need c >= 1");
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("poisson_share_approx: q must lie in (0, 1]");
  }
  const double n = static_cast<double>(c);
  const double mu = mode == PoissonMode::kCPlusOne ? (n + 1.0) * q : n * q;
  PoissonShareApprox out;
  out.value = -std::expm1(-mu) / mu;
  out.outside_validity_regime = c < 100 || q > 0.1;
  return out;
}

ShareKernelResult share_expectation(double stake, std::uint64_t trials,
                                    double q) {
  if (!(stake >= 0.0)) throw DomainError("share_expectation: stake < 0");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("share_expectation: q must lie in [0, 1]");
  }
  // 0 / (0 + k) = 0 for every k, including the 0 / (0 + 0) convention.
  if (stake == 0.0) return {0.0, 0, 0.0};
  return binomial_expectation(trials, q,
                              [stake](double k) { return stake / (stake + k); });
}

ShareKernelResult crowd_share_expectation(double stake, std::uint64_t trials,
                                          double q) {
  if (!(stake >= 0.0)) throw DomainError("crowd_share_expectation: stake < 0");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("crowd_share_expectation: q must lie in [0, 1]");
  }
  return binomial_expectation(trials, q, [stake](double k) {
    return k == 0.0 ? 0.0 : k / (stake + k);
  });
}

ExpectationReport expected_win_exact(const LotteryConfig& config,
                                     const SyndicateStrategy& syndicate,
                                     const CrowdStrategy& crowd) {
  check_compatible(config, syndicate, crowd);
  const double s = syndicate.total_stake();
  const double c = static_cast<double>(crowd.bettors());
  const double v = jackpot(config, s, c);

  std::map<std::pair<double, double>, TicketShares> cache;
  CompensatedSum syndicate_share;
  CompensatedSum crowd_share;
  CompensatedSum carryover;
  for (std::size_t i = 0; i < config.tickets(); ++i) {
    const double stake = syndicate.stake_on(i);
    const Marginal m = crowd_marginal(crowd, i);
    auto [it, inserted] = cache.try_emplace({stake, m.probability});
    if (inserted) it->second = ticket_shares(stake, m);
    const double p = config.probability(i);
    syndicate_share += p * it->second.syndicate;
    crowd_share += p * it->second.crowd;
    carryover += p * it->second.carryover;
  }

  ExpectationReport report =
      make_report(v, v * syndicate_share.value(), s, Method::kExact);
  if (crowd.bettors() > 0) {
    report.crowd_expected_return = (v * crowd_share.value() - c) / c;
  }
  report.carryover_probability = carryover.value();
  return report;
}

double crowd_expected_return(const LotteryConfig& config,
                             const SyndicateStrategy& syndicate,
                             const CrowdStrategy& crowd) {
  if (crowd.bettors() == 0) {
    throw DomainError("crowd_expected_return: crowd is empty (c = 0)");
  }
  return *expected_win_exact(config, syndicate, crowd).crowd_expected_return;
}

}  // namespace jackpot
