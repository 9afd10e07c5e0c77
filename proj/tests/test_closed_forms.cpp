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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "jackpot/closed_forms.hpp"
#include "jackpot/error.hpp"
#include "jackpot/exact_engine.hpp"
#include "jackpot/model.hpp"
#include "oracles.hpp"

using namespace jackpot;
using oracle::relative_error;

TEST_CASE("lemma 1 formula") {
  const std::vector<double> uniform(1000, 0.001);
  CHECK(relative_error(lemma1_expected_win(1000, 1000, 1000, uniform),
                       1264.0804608467671) < 1e-13);
  CHECK(lemma1_expected_win(1000, 1000, 0, uniform) == 0.0);
  CHECK_THROWS_AS(lemma1_expected_win(2, 2, 1, std::vector<double>{1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(lemma1_expected_win(2, 2, 3, std::vector<double>{0.5, 0.5}),
                  DomainError);
}

TEST_CASE("lemma 1 equals the exact engine for e_s bets") {
  for (std::uint64_t t : {2, 5, 17}) {
    for (std::uint64_t c : {0, 1, 2, 30}) {
      std::vector<double> q(t);
      std::iota(q.begin(), q.end(), 1.0);
      const double total = std::accumulate(q.begin(), q.end(), 0.0);
      for (double& v : q) v /= total;
      for (std::uint64_t s = 1; s <= t; s += 2) {
        const auto got = expected_win_exact(
            LotteryConfig::Equiprobable(t),
            SyndicateStrategy::Create(static_cast<double>(s),
                                      uniform_support(s, t)),
            CrowdStrategy::Create(c, q));
        // The closed form averages the crowd factor over all tickets; for
        // non-uniform q that matches e_s only when the support is full.
        if (s == t) {
          CHECK(relative_error(lemma1_expected_win(t, c, s, q),
                               got.expected_win) < 1e-12);
        }
        const std::vector<double> uq(t, 1.0 / static_cast<double>(t));
        const auto uni = expected_win_exact(
            LotteryConfig::Equiprobable(t),
            SyndicateStrategy::Create(static_cast<double>(s),
                                      uniform_support(s, t)),
            CrowdStrategy::Create(c, uq));
        CHECK(relative_error(lemma1_expected_win(t, c, s, uq),
                             uni.expected_win) < 1e-12);
      }
    }
  }
}

TEST_CASE("uniform return") {
  CHECK(relative_error(uniform_return(1000, 1000, 1000), 0.26408046084676707) <
        1e-12);
  CHECK(relative_error(uniform_return(1000, 5000, 1000), 0.19170439010449220) <
        1e-12);
  CHECK(relative_error(uniform_return(1000, 10000, 1000),
                       0.099840374972608560) < 1e-12);
  CHECK_THROWS_AS(uniform_return(10, 10, 0), DomainError);
  CHECK_THROWS_AS(uniform_return(10, 10, 11), DomainError);
  CHECK(uniform_gain(1000, 1000, 1000.0) ==
        doctest::Approx(1000.0 * uniform_return(1000, 1000, 1000)));
}

TEST_CASE("breakeven") {
  const auto b = breakeven(1000, 1000);
  CHECK(relative_error(b.s_star, 291.08888316344355) < 1e-12);
  CHECK(relative_error(b.g_min, -53.554499187567661) < 1e-12);
  CHECK(b.s_zero == doctest::Approx(2.0 * b.s_star));
  CHECK(b.first_profitable_integer == 583);
  CHECK(uniform_gain(1000, 1000, 582.0) < 0.0);
  CHECK(uniform_gain(1000, 1000, 583.0) > 0.0);
  // The gain curve is a parabola with its vertex at s_star.
  CHECK(uniform_gain(1000, 1000, b.s_star) == doctest::Approx(b.g_min));
  CHECK(uniform_gain(1000, 1000, b.s_star - 1) > b.g_min);
  CHECK(uniform_gain(1000, 1000, b.s_star + 1) > b.g_min);
  CHECK_THROWS_AS(breakeven(1, 10), DomainError);
  CHECK_THROWS_AS(breakeven(10, 1), DomainError);
}

TEST_CASE("breakeven integer is the first profitable stake across sizes") {
  for (std::uint64_t t : {10, 100, 500}) {
    for (std::uint64_t c : {5, 100, 900}) {
      const auto b = breakeven(t, c);
      const auto n = b.first_profitable_integer;
      CHECK(uniform_gain(t, c, static_cast<double>(n)) > 0.0);
      if (n > 1) CHECK(uniform_gain(t, c, static_cast<double>(n - 1)) <= 0.0);
    }
  }
}

TEST_CASE("table 1 in poisson mode") {
  const auto tab = table1(1000, 1000, 4, PmfMode::kPoisson);
  REQUIRE(tab.rows.size() == 5);
  const double probs[] = {0.36787944117144233, 0.36787944117144233,
                          0.18393972058572117, 0.061313240195240391,
                          0.015328310048810098};
  const double payoff[] = {2000, 1000, 2000.0 / 3.0, 500, 400};
  for (int k = 0; k < 5; ++k) {
    CHECK(relative_error(tab.rows[k].probability, probs[k]) < 1e-13);
    CHECK(tab.rows[k].payoff_full == doctest::Approx(payoff[k]));
    CHECK(tab.rows[k].payoff_single == doctest::Approx(1001.0 / (k + 1)));
    CHECK(tab.rows[k].contribution_single ==
          doctest::Approx(tab.rows[k].payoff_single * probs[k] / 1000.0));
  }
  CHECK(tab.sum_contribution_full == doctest::Approx(1263.0527).epsilon(1e-7));
  CHECK(tab.sum_contribution_single == doctest::Approx(0.63213).epsilon(1e-4));
  CHECK(tab.rows[0].contribution_full + tab.rows[1].contribution_full ==
        doctest::Approx(1103.638).epsilon(1e-6));
}

TEST_CASE("table 1 in binomial mode tracks poisson closely") {
  const auto bin = table1(1000, 1000, 4, PmfMode::kBinomial);
  CHECK(relative_error(bin.rows[0].probability, 0.36769542477096404) < 1e-13);
  CHECK(std::fabs(bin.sum_contribution_full - 1263.05) < 1.0);
  CHECK_THROWS_AS(table1(1000, 3, 4), DomainError);
}

TEST_CASE("group structure") {
  const double l10 = group_adjusted_win(1000, 1000, 1000, 100, 10).ratio_to_ungrouped;
  const double l20 = group_adjusted_win(1000, 1000, 1000, 50, 20).ratio_to_ungrouped;
  const double l500 = group_adjusted_win(1000, 1000, 1000, 2, 500).ratio_to_ungrouped;
  CHECK(relative_error(l10, 0.99624876924446004) < 1e-12);
  CHECK(relative_error(l20, 0.99210470560005693) < 1e-12);
  CHECK(relative_error(l500, 0.81966919732479224) < 1e-12);
  CHECK(group_adjusted_win(1000, 1000, 1000, 1000, 1).ratio_to_ungrouped ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(group_adjusted_win(1000, 1000, 1000, 3, 10), DomainError);
  CHECK_THROWS_AS(group_adjusted_win(10, 20, 5, 1, 20), DomainError);
}

TEST_CASE("multiples of the trump ticket") {
  CHECK(relative_error(multiples_gain(2, 10, 5), 1.2258214285714286) < 1e-13);
  CHECK(relative_error(multiples_gain(1, 1000, 1000), 264.08046084676707) < 1e-11);
  CHECK(multiples_gain(2, 10, 10) / 20.0 ==
        doctest::Approx(0.0964307647295).epsilon(1e-10));
  CHECK(multiples_gain(3, 7, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(multiples_gain(0, 10, 5), DomainError);
}

TEST_CASE("optimal budget allocation") {
  CHECK(optimal_budget_allocation(7, 3) == std::vector<std::int64_t>{3, 2, 2});
  CHECK(optimal_budget_allocation(2, 5) ==
        std::vector<std::int64_t>{1, 1, 0, 0, 0});
  CHECK_THROWS_AS(optimal_budget_allocation(0, 5), DomainError);
}

TEST_CASE("unpopular factors") {
  CHECK(unpopular_factor_return(std::vector<double>{}) == doctest::Approx(0.45));
  CHECK(unpopular_factor_return(std::vector<double>{1.2, 1.5}) ==
        doctest::Approx(0.45 * 1.8));
  CHECK(unpopular_factor_return(std::vector<double>{2.0}, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(unpopular_factor_return(std::vector<double>{0.0}), DomainError);
}

TEST_CASE("matheson approximation") {
  MathesonInputs in;
  in.syndicate_tickets = 1000;
  in.crowd_tickets = 1000;
  in.win_probability = 0.001;
  CHECK(relative_error(matheson_expected_value(in), 1264.2411176571154) < 1e-13);
  in.carryover = 1000;
  CHECK(relative_error(matheson_expected_value(in), 1896.3616764856730) < 1e-13);
  in.crowd_tickets = 0;
  CHECK_THROWS_AS(matheson_expected_value(in), DomainError);
}
