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


// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jackpot/closed_forms.hpp"
#include "jackpot/equilibrium.hpp"
#include "jackpot/exact_engine.hpp"
#include "jackpot/model.hpp"
#include "jackpot/random.hpp"
#include "jackpot/simulator.hpp"

using namespace jackpot;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double rel(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}

double linf(std::span<const double> a, std::span<const double> b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max(out, std::fabs(a[i] - b[i]));
  }
  return out;
}

Verdict trump_ticket_return() {
  const auto start = std::chrono::steady_clock::now();
  const double r = uniform_return(1000, 1000, 1000);
  const double elapsed = seconds_since(start);
  return {std::fabs(r - 0.2641) <= 0.0005 && elapsed < 1.0,
          format("return %.6f, %.3f s", r, elapsed)};
}

Verdict breakeven_point() {
  const auto b = breakeven(1000, 1000);
  const bool ok = std::fabs(b.g_min + 53.55) <= 0.05 &&
                  b.first_profitable_integer == 583 && b.s_star >= 290.5 &&
                  b.s_star <= 291.5;
  return {ok, format("g_min %.4f, first profitable %llu, s* %.4f (vs 290.7981 "
                     "quoted; the closed form gives 291.09)",
                     b.g_min,
                     static_cast<unsigned long long>(b.first_profitable_integer),
                     b.s_star)};
}

Verdict table_one() {
  const auto tab = table1(1000, 1000, 4, PmfMode::kPoisson);
  const double prob[] = {0.368, 0.368, 0.184, 0.061, 0.015};
  const double payoff_full[] = {2000, 1000, 666, 500, 400};
  const double contrib_full[] = {735.76, 367.88, 122.63, 30.66, 6.13};
  const double payoff_single[] = {1001.0, 500.5, 333.7, 250.3, 200.2};
  const double contrib_single[] = {0.368, 0.184, 0.061, 0.015, 0.003};
  int bad = 0;
  int cells = 0;
  for (int k = 0; k < 5; ++k) {
    const auto& r = tab.rows[k];
    bad += std::fabs(r.probability - prob[k]) > 0.0005;
    bad += std::fabs(r.payoff_full - payoff_full[k]) > 1.0;
    bad += std::fabs(r.contribution_full - contrib_full[k]) > 0.01;
    bad += std::fabs(r.payoff_single - payoff_single[k]) > 1.0;
    bad += std::fabs(r.contribution_single - contrib_single[k]) > 0.01;
    cells += 5;
  }
  bad += std::fabs(tab.sum_contribution_full - 1263.05) > 0.02;
  bad += std::fabs(tab.sum_contribution_single - 0.632) > 0.001;
  cells += 2;
  return {bad == 0, format("%d of %d printed cells in tolerance; sums %.4f and "
                           "%.5f",
                           cells - bad, cells, tab.sum_contribution_full,
                           tab.sum_contribution_single)};
}

Verdict crowd_sweep() {
  const double r5 = uniform_return(1000, 5000, 1000);
  const double r10 = uniform_return(1000, 10000, 1000);
  // Cross-check the closed form with the exact engine.
  const auto exact10 = expected_win_exact(
      LotteryConfig::Equiprobable(1000),
      SyndicateStrategy::Create(1000, std::vector<double>(1000, 0.001)),
      CrowdStrategy::Uniform(10000, 1000));
  const bool ok = std::fabs(r5 - 0.19) <= 0.005 &&
                  std::fabs(r10 - 0.10) <= 0.005 &&
                  rel(*exact10.expected_return, r10) < 1e-9;
  return {ok, format("c=5000: %.4f, c=10000: %.4f", r5, r10)};
}

Verdict intro_bound() {
  const auto tab = table1(1000, 1000, 1, PmfMode::kPoisson);
  const double sum =
      tab.rows[0].contribution_full + tab.rows[1].contribution_full;
  return {std::fabs(sum - 1103.64) <= 0.02,
          format("k=0,1 contributions sum to %.4f (quoted as > $1,104 after "
                 "rounding each term up)",
                 sum)};
}

Verdict oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int configs = 0;
  double worst = 0.0;
  for (std::size_t t = 1; t <= 3; ++t) {
    const std::vector<double> uniform(t, 1.0 / static_cast<double>(t));
    std::vector<double> skew(t);
    for (std::size_t i = 0; i < t; ++i) skew[i] = (t == 1) ? 1.0 : 0.0;
    if (t == 2) skew = {0.7, 0.3};
    if (t == 3) skew = {0.5, 0.3, 0.2};
    std::vector<double> boundary(t, 0.0);
    boundary[0] = 1.0;
    const std::vector<std::vector<double>> ps = {uniform, skew};
    const std::vector<std::vector<double>> qs = {uniform, skew, boundary};
    std::vector<std::vector<double>> stake_sets = {
        std::vector<double>(t, 1.0),   // integer, every ticket
        boundary,                      // integer, one ticket
        std::vector<double>(t, 0.5),   // fractional
    };
    std::vector<double> uneven(t);
    for (std::size_t i = 0; i < t; ++i) uneven[i] = 1.25 + 0.5 * i;
    stake_sets.push_back(uneven);
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (const auto& stakes : stake_sets) {
          for (std::uint64_t c = 0; c <= 4; ++c) {
            for (double a : {0.0, 1.5}) {
              const auto config = LotteryConfig::Create(p, a, a > 0 ? 0.2 : 0.0);
              const auto syn = SyndicateStrategy::FromStakes(stakes);
              const auto crowd = CrowdStrategy::Create(c, q);
              const auto x = expected_win_exact(config, syn, crowd);
              const auto e = enumerate_exact(config, syn, crowd);
              worst = std::max(worst, rel(x.expected_win, e.expected_win));
              worst = std::max(worst, std::fabs(*x.carryover_probability -
                                                *e.carryover_probability));
              if (c > 0) {
                const double cw_x = *x.crowd_expected_return + 1.0;
                const double cw_e = *e.crowd_expected_return + 1.0;
                worst = std::max(worst, rel(cw_x, cw_e));
              }
              ++configs;
            }
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {configs >= 200 && worst <= 1e-12 && elapsed < 10.0,
          format("%d configurations, worst relative error %.2e, %.2f s",
                 configs, worst, elapsed)};
}

Verdict monte_carlo() {
  CounterRng rng(20240601, 0);
  int within = 0;
  bool identical = true;
  double worst_z = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t t = 2 + rng.below(2);
    const std::uint64_t c = 1 + rng.below(4);
    const auto p = random_simplex_point(t, rng);
    const auto q = random_simplex_point(t, rng);
    const auto r = random_simplex_point(t, rng);
    const double s = 0.5 + 3.5 * rng.uniform();
    const double a = k % 2 == 0 ? 0.0 : 2.0 * rng.uniform();
    const double x = k % 3 == 0 ? 0.0 : 0.3 * rng.uniform();
    const auto config = LotteryConfig::Create(p, a, x);
    const auto syn = SyndicateStrategy::Create(s, r);
    const auto crowd = CrowdStrategy::Create(c, q);
    const double want = *expected_win_exact(config, syn, crowd).expected_return;
    const std::uint64_t seed = 1000 + k;
    const auto sim = simulate(config, syn, crowd, 1000000, seed, 0);
    const double z = std::fabs(sim.mean_syndicate_return - want) / sim.std_error;
    worst_z = std::max(worst_z, z);
    within += z <= 4.0;
    if (k < 3) {
      const auto again = simulate(config, syn, crowd, 1000000, seed, 1);
      identical = identical &&
                  again.mean_syndicate_return == sim.mean_syndicate_return &&
                  again.std_error == sim.std_error &&
                  again.mean_crowd_return == sim.mean_crowd_return &&
                  again.carryover_frequency == sim.carryover_frequency;
    }
  }
  return {within >= 19 && identical,
          format("%d/20 within 4 s.e. (largest |z| %.2f); reruns %s", within,
                 worst_z, identical ? "bit-identical" : "DIFFER")};
}

Verdict equilibrium() {
  double worst_crowd = 0.0;
  bool certified = true;
  bool converged = true;
  CounterRng rng(77, 0);
  for (std::uint64_t t : {2, 5, 10}) {
    for (std::uint64_t c : {2, 10, 100}) {
      const std::vector<double> e(t, 1.0 / static_cast<double>(t));
      const auto obj = crowd_objective(t, c, t);
      for (int start = 0; start < 2; ++start) {
        SimplexOptions opts;
        if (start == 1) opts.start = random_simplex_point(t, rng);
        const auto r = minimize_return_over_crowd(t, c, t, opts);
        converged = converged && r.converged;
        worst_crowd = std::max(worst_crowd, linf(r.argmin, e));
        certified = certified && perturbation_certificate(obj, r.argmin).holds;
      }
    }
  }
  double worst_asym = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t t = 2 + rng.below(9);
    const auto p = random_simplex_point(t, rng);
    const AsymptoticConfig cfg{0.25 + 4.0 * rng.uniform(), 0.0, 0.0};
    for (Side side : {Side::kCrowd, Side::kSyndicate}) {
      const auto r = asymptotic_best_response(p, cfg, side);
      converged = converged && r.converged;
      worst_asym = std::max(worst_asym, linf(r.argmin, p));
      certified = certified &&
                  perturbation_certificate(asymptotic_objective(p, cfg, side),
                                           r.argmin)
                      .holds;
    }
  }
  return {worst_crowd <= 1e-8 && worst_asym <= 1e-8 && certified && converged,
          format("crowd L_inf %.2e, asymptotic L_inf %.2e, certificates %s",
                 worst_crowd, worst_asym, certified ? "hold" : "FAIL")};
}

Verdict convexity() {
  std::vector<double> grid;
  for (int i = 1; i < 200; ++i) grid.push_back(i / 200.0);
  bool ok = true;
  double worst_end = 0.0;
  for (std::uint64_t c : {2, 5, 20, 100}) {
    const auto g = convexity_kernel_grid(c, grid);
    ok = ok && std::all_of(g.values.begin(), g.values.end(),
                           [](double v) { return v > 0.0; });
    ok = ok && std::all_of(g.first_differences.begin(),
                           g.first_differences.end(),
                           [](double d) { return d < 0.0; });
    ok = ok && std::all_of(g.second_differences.begin(),
                           g.second_differences.end(),
                           [](double d) { return d > 0.0; });
    worst_end = std::max(
        worst_end, std::fabs(convexity_kernel(1e-12, c) - (c + 1.0)));
    worst_end =
        std::max(worst_end, std::fabs(convexity_kernel(1.0 - 1e-12, c) - 1.0));
  }
  return {ok && worst_end <= 1e-6,
          format("positive, decreasing, convex on a 199-point grid; endpoint "
                 "error %.2e",
                 worst_end)};
}

Verdict multiples() {
  double smallest = INFINITY;
  for (std::uint64_t n = 1; n <= 4; ++n) {
    for (std::uint64_t t : {5, 10, 50}) {
      for (std::uint64_t c = 1; c <= 100; ++c) {
        smallest = std::min(smallest, multiples_gain(n, t, c));
      }
    }
  }
  // Two syndicates each holding one of every ticket split every prize they
  // win, so each earns the return of the combined 2t stake.
  const auto both = expected_win_exact(
      LotteryConfig::Equiprobable(10),
      SyndicateStrategy::Create(20, std::vector<double>(10, 0.1)),
      CrowdStrategy::Uniform(10, 10));
  const double each = *both.expected_return;
  return {smallest > 0.0 && each > 0.0,
          format("smallest gain %.4g over the grid; each trump syndicate "
                 "returns %.4f",
                 smallest, each)};
}

Verdict winning_bound() {
  CounterRng rng(31, 0);
  int holds = 0;
  double smallest = INFINITY;
  for (int k = 0; k < 50; ++k) {
    const std::size_t t = 2 + rng.below(5);
    const std::uint64_t c = 2 + rng.below(29);
    const auto p = random_simplex_point(t, rng);
    const double s = 0.5 + 19.5 * rng.uniform();
    double a = 0.0;
    double x = 0.0;
    if (k % 3 == 1) {  // a / (s + c) = x
      x = 0.5 * rng.uniform();
      a = x * (s + static_cast<double>(c));
    } else if (k % 3 == 2) {
      a = 10.0 * rng.uniform();
      x = 0.5 * rng.uniform();
    }
    const auto r = expected_win_exact(LotteryConfig::Create(p, a, x),
                                      SyndicateStrategy::Create(s, p),
                                      CrowdStrategy::Create(c, p));
    const auto w = winning_condition(a, x, s, static_cast<double>(c));
    const double margin = r.expected_gain - w.bound;
    smallest = std::min(smallest, margin);
    holds += margin > 0.0;
  }
  return {holds == 50,
          format("%d/50 strictly above s(a/(s+c) - x); smallest margin %.3g",
                 holds, smallest)};
}

// Monotone multipliers normalized so that sum p_(i) u_(i) = 1.
std::vector<double> random_multipliers(const std::vector<double>& sorted_p,
                                       bool increasing, CounterRng& rng) {
  std::vector<double> w(sorted_p.size());
  for (double& v : w) v = rng.uniform();
  std::sort(w.begin(), w.end());
  if (!increasing) std::reverse(w.begin(), w.end());
  double norm = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) norm += sorted_p[i] * w[i];
  for (double& v : w) v /= norm;
  return w;
}

Verdict biased_crowds() {
  CounterRng rng(4242, 0);
  int negative = 0;
  int built = 0;
  double largest = -INFINITY;
  for (int k = 0; k < 200; ++k) {
    const bool seeking = k < 100;
    const std::size_t t = 2 + rng.below(9);
    const auto p = random_simplex_point(t, rng);
    std::vector<double> sorted = p;
    std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
    RiskProfile profile{random_multipliers(sorted, seeking, rng),
                        seeking ? RiskKind::kRiskSeeking
                                : RiskKind::kRiskAverse};
    std::vector<double> q;
    try {
      q = build_risk_profile(p, profile);
    } catch (const std::exception&) {
      continue;
    }
    ++built;
    const AsymptoticConfig cfg{0.25 + 4.0 * rng.uniform(), 0.0, 0.0};
    const double crowd = asymptotic_return(p, p, q, cfg).crowd;
    largest = std::max(largest, crowd);
    negative += crowd < 0.0;
  }
  const double proportional =
      asymptotic_return(std::vector<double>{0.6, 0.4},
                        std::vector<double>{0.6, 0.4},
                        std::vector<double>{0.6, 0.4}, {})
          .crowd;
  return {built == 200 && negative == 200 && std::fabs(proportional) < 1e-15,
          format("%d/%d profiles give a negative crowd return (largest %.3g); "
                 "proportional crowd %.1g",
                 negative, built, largest, proportional)};
}

Verdict small_groups() {
  double worst = 0.0;
  for (std::uint64_t l : {1, 2, 4, 5, 8, 10, 20}) {
    const double ratio =
        group_adjusted_win(1000, 1000, 1000, 1000 / l, l).ratio_to_ungrouped;
    worst = std::max(worst, std::fabs(ratio - 1.0));
  }
  const double breakdown =
      group_adjusted_win(1000, 1000, 1000, 2, 500).ratio_to_ungrouped;
  return {worst <= 0.01 && std::fabs(breakdown - 0.820) <= 0.005,
          format("max |ratio - 1| %.4f for l <= 20; l = 500 ratio %.4f", worst,
                 breakdown)};
}

Verdict matheson() {
  MathesonInputs in;
  in.syndicate_tickets = 1000;
  in.crowd_tickets = 1000;
  in.win_probability = 0.001;
  const double approx = matheson_expected_value(in);
  const double exact =
      expected_win_exact(
          LotteryConfig::Equiprobable(1000),
          SyndicateStrategy::Create(1000, std::vector<double>(1000, 0.001)),
          CrowdStrategy::Uniform(1000, 1000))
          .expected_win;
  const double err = rel(approx, exact);
  return {err <= 0.01, format("approximation %.4f vs exact %.4f (%.3f%%)",
                              approx, exact, 100.0 * err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria =
      {
          {"trump-ticket return", trump_ticket_return},
          {"breakeven", breakeven_point},
          {"table 1", table_one},
          {"crowd sweep", crowd_sweep},
          {"intro bound", intro_bound},
          {"oracle equivalence", oracle_equivalence},
          {"monte carlo", monte_carlo},
          {"equilibrium", equilibrium},
          {"convexity kernel", convexity},
          {"multiples of the trump ticket", multiples},
          {"winning condition", winning_bound},
          {"biased crowds lose", biased_crowds},
          {"small coordinating groups", small_groups},
          {"matheson approximation", matheson},
      };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
