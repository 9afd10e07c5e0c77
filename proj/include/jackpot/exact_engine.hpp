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

// Exact expectations over the crowd's holdings of the winning ticket.
//
// When ticket i is drawn the crowd holds K_i ~ Bin(c, q_i) copies of it and
// the syndicate holds s_i, so the syndicate's expected win is
//
//   v * sum_i p_i * E[s_i / (s_i + K_i)],   v = a + (s + c)(1 - x),
//
// with 0 / (0 + 0) taken as 0 (nobody holds the ticket; the pool carries
// over). Grouped crowds (g groups of l distinct uniform tickets) give
// K_i ~ Bin(g, l / t).

#ifndef JACKPOT_EXACT_ENGINE_HPP_
#define JACKPOT_EXACT_ENGINE_HPP_

#include <cstdint>

#include "jackpot/model.hpp"

namespace jackpot {

struct ShareKernelResult {
  double value = 0.0;
  // Binomial terms summed; 0 for closed forms.
  std::uint64_t terms_used = 0;
  // Bound on the truncation error; every sum here is complete.
  double max_term_error = 0.0;
};

// C(c, k) q^k (1 - q)^(c - k), evaluated with Loader's saddle-point
// expansion so that relative accuracy holds for c in the millions.
double binom_pmf(std::uint64_t c, double q, std::uint64_t k);

// E[1 / (1 + X)] for X ~ Bin(c, q), via (1 - (1 - q)^(c + 1)) / ((c + 1) q).
// q = 0 is rejected: callers must treat a crowd that never holds the ticket
// separately.
ShareKernelResult expected_share_factor(std::uint64_t c, double q);

enum class PoissonMode {
  kCPlusOne,  // (1 - exp(-(c + 1) q)) / ((c + 1) q)
  kMean,      // (1 - exp(-mu)) / mu with mu = c q
};

struct PoissonShareApprox {
  double value = 0.0;
  // Set when c < 100 or q > 0.1, where the approximation is not expected to
  // track the exact value closely. The value is still returned.
  bool outside_validity_regime = false;
};

PoissonShareApprox poisson_share_approx(std::uint64_t c, double q,
                                        PoissonMode mode);

// E[stake / (stake + K)] for K ~ Bin(trials, q) by full summation.
ShareKernelResult share_expectation(double stake, std::uint64_t trials,
                                    double q);

// E[K / (stake + K)] for K ~ Bin(trials, q) by full summation.
ShareKernelResult crowd_share_expectation(double stake, std::uint64_t trials,
                                          double q);

// Exact syndicate expectation; also fills the crowd's expected return (when
// the crowd is nonempty) and the probability that the pool carries over.
// Cost is O(t * c) in the worst case; tickets sharing the same stake and
// selection probability are evaluated once.
ExpectationReport expected_win_exact(const LotteryConfig& config,
                                     const SyndicateStrategy& syndicate,
                                     const CrowdStrategy& crowd);

// (v * E[K_D / (s_D + K_D)] - c) / c. Throws DomainError for an empty crowd.
double crowd_expected_return(const LotteryConfig& config,
                             const SyndicateStrategy& syndicate,
                             const CrowdStrategy& crowd);

}  // namespace jackpot

#endif  // JACKPOT_EXACT_ENGINE_HPP_
