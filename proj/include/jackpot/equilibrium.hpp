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

// Best responses of crowd and syndicate on the probability simplex, the
// large-pool limit of the game, and the numerical checks built on them.

#ifndef JACKPOT_EQUILIBRIUM_HPP_
#define JACKPOT_EQUILIBRIUM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "jackpot/random.hpp"

namespace jackpot {

// Euclidean projection onto {x >= 0, sum x = 1} (sort-based).
std::vector<double> project_to_simplex(std::span<const double> v);

// A smooth objective on the simplex. `gradient` writes into its second
// argument, which has the same length as the point.
struct SimplexObjective {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct SimplexOptions {
  double tolerance = 1e-10;
  std::uint64_t max_iterations = 100000;
  // Interior starting point; defaults to the uniform vector.
  std::optional<std::vector<double>> start;
};

struct OptimizerReport {
  std::vector<double> argmin;
  // Common value of the partial derivatives on the support (the Lagrange
  // multiplier of the sum constraint).
  double multiplier = 0.0;
  // Spread of the partial derivatives over the support, or the largest
  // violation of the boundary condition on zero coordinates.
  double residual = 0.0;
  double objective = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
};

// First-order residual of `point` given its gradient; also returns the
// multiplier estimate.
double first_order_residual(std::span<const double> point,
                            std::span<const double> gradient,
                            double* multiplier = nullptr);

// Projected gradient descent. The step is doubled after every accepted move
// and halved while it exceeds the inverse of the local curvature measured
// along the move, or while the objective rises beyond rounding.
OptimizerReport minimize_on_simplex(const SimplexObjective& objective,
                                    std::size_t dimension,
                                    const SimplexOptions& options = {});

struct PerturbationCertificate {
  bool holds = false;
  // Smallest objective increase over all perturbations tried.
  double worst_margin = 0.0;
  std::size_t perturbations = 0;
};

// Moves each coordinate by +-delta, re-projects, and checks that the
// objective gets strictly worse (larger) every time.
PerturbationCertificate perturbation_certificate(
    const SimplexObjective& objective, std::span<const double> point,
    double delta = 1e-3);

// Syndicate return, as a function of the crowd's q, for s distinct tickets
// in an equiprobable lottery without take or carryover.
SimplexObjective crowd_objective(std::uint64_t tickets, std::uint64_t crowd,
                                 std::uint64_t support);

// Crowd best response that minimizes the syndicate's return. Requires
// 1 <= s <= t and c >= 2.
OptimizerReport minimize_return_over_crowd(std::uint64_t tickets,
                                           std::uint64_t crowd,
                                           std::uint64_t support,
                                           const SimplexOptions& options = {});

// f(q) = (1 - (1 - q)^(c + 1)) / q on (0, 1).
double convexity_kernel(double q, std::uint64_t crowd);

// f'(q), from the series -(c + 1) c E[1 / ((1 + Y)(2 + Y))], Y ~ Bin(c-1, q).
// Valid on [0, 1].
double convexity_kernel_derivative(double q, std::uint64_t crowd);

struct ConvexityGrid {
  std::vector<double> values;
  std::vector<double> first_differences;   // size n - 1
  std::vector<double> second_differences;  // size n - 2
};

ConvexityGrid convexity_kernel_grid(std::uint64_t crowd,
                                    std::span<const double> grid);

// Limits of the large-pool game: c / s -> u, a / s -> a_rate.
struct AsymptoticConfig {
  double u = 1.0;
  double a_rate = 0.0;
  double x = 0.0;
};

struct AsymptoticReturns {
  double syndicate = 0.0;
  double crowd = 0.0;
};

// syndicate = J sum_i p_i r_i / (r_i + u q_i) - 1 and
// crowd     = J sum_i p_i q_i / (r_i + u q_i) - 1, J = a_rate + (1-x)(1+u).
// They satisfy syndicate + u * crowd = a_rate - x (1 + u).
AsymptoticReturns asymptotic_return(std::span<const double> p,
                                    std::span<const double> r,
                                    std::span<const double> q,
                                    const AsymptoticConfig& cfg);

enum class Side { kCrowd, kSyndicate };

// The objective each side minimizes in the large-pool limit when the other
// side bets proportionally to p: the crowd minimizes the syndicate's return
// over q, the syndicate minimizes minus its return over r.
SimplexObjective asymptotic_objective(std::span<const double> p,
                                      const AsymptoticConfig& cfg, Side side);

OptimizerReport asymptotic_best_response(std::span<const double> p,
                                         const AsymptoticConfig& cfg,
                                         Side side,
                                         const SimplexOptions& options = {});

struct WinningCondition {
  bool holds = false;
  double bound = 0.0;  // s (a / (s + c) - x)
};

// Lower bound on the gain of probability-proportional stakes. For c >= 2
// the exact gain exceeds it strictly.
WinningCondition winning_condition(double carryover, double take,
                                   double stake, double crowd);

enum class RiskKind { kRiskSeeking, kRiskAverse };

struct RiskProfile {
  // Multipliers by rank of p, highest probability first.
  std::vector<double> multipliers;
  RiskKind kind = RiskKind::kRiskSeeking;
};

// q_(i) = p_(i) u_(i), mapped back to ticket order. Throws ValidationError
// naming the violated clause.
std::vector<double> build_risk_profile(std::span<const double> p,
                                       const RiskProfile& profile);

struct OptimalityCheckReport {
  double baseline_gain = 0.0;      // p = r = q uniform
  double best_sample_gain = 0.0;
  std::vector<double> best_sample;
  std::uint64_t samples = 0;
  bool holds = false;
};

// Compares the exact gain of r = q = p at p uniform against random p drawn
// uniformly from the simplex, with a = x = 0.
OptimalityCheckReport equiprobable_optimality_check(std::uint64_t tickets,
                                                    std::uint64_t crowd,
                                                    double stake,
                                                    std::uint64_t samples,
                                                    std::uint64_t seed);

// Point drawn uniformly from the open simplex (normalized exponentials).
std::vector<double> random_simplex_point(std::size_t dimension,
                                         CounterRng& rng);

}  // namespace jackpot

#endif  // JACKPOT_EQUILIBRIUM_HPP_
