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

#include "jackpot/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "jackpot/error.hpp"
#include "jackpot/exact_engine.hpp"
#include "jackpot/model.hpp"
#include "jackpot/summation.hpp"

namespace jackpot {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc.value();
}

// (1 - (1 - q)^(c + 1)) / q extended continuously to q = 0.
double kernel_on_closed_interval(double q, std::uint64_t crowd) {
  if (q == 0.0) return static_cast<double>(crowd) + 1.0;
  return (static_cast<double>(crowd) + 1.0) *
         expected_share_factor(crowd, q).value;
}

void validate_config(const AsymptoticConfig& cfg) {
  if (!(cfg.u >= 0.0) || !std::isfinite(cfg.u)) {
    throw DomainError("asymptotic: u must be >= 0");
  }
  if (!(cfg.a_rate >= 0.0) || !std::isfinite(cfg.a_rate)) {
    throw DomainError("asymptotic: a_rate must be >= 0");
  }
  if (!(cfg.x >= 0.0 && cfg.x < 1.0)) {
    throw DomainError("asymptotic: x must lie in [0, 1)");
  }
}

double jackpot_rate(const AsymptoticConfig& cfg) {
  return cfg.a_rate + (1.0 - cfg.x) * (1.0 + cfg.u);
}

}  // namespace

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw DomainError("project_to_simplex: empty vector");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [theta](double x) { return std::max(x - theta, 0.0); });
  return out;
}

double first_order_residual(std::span<const double> point,
                            std::span<const double> gradient,
                            double* multiplier) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  CompensatedSum support_sum;
  std::size_t support = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] > 0.0) {
      lo = std::min(lo, gradient[i]);
      hi = std::max(hi, gradient[i]);
      support_sum += gradient[i];
      ++support;
    }
  }
  if (support == 0) return std::numeric_limits<double>::infinity();
  double residual = hi - lo;
  // A zero coordinate is optimal only if its derivative is at least the
  // multiplier.
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] == 0.0) residual = std::max(residual, lo - gradient[i]);
  }
  if (multiplier != nullptr) {
    *multiplier = support_sum.value() / static_cast<double>(support);
  }
  return residual;
}

OptimizerReport minimize_on_simplex(const SimplexObjective& objective,
                                    std::size_t dimension,
                                    const SimplexOptions& options) {
  if (dimension == 0) throw DomainError("minimize_on_simplex: dimension 0");
  std::vector<double> x;
  if (options.start) {
    if (options.start->size() != dimension) {
      throw DomainError("minimize_on_simplex: start has the wrong length");
    }
    x = project_to_simplex(*options.start);
  } else {
    x.assign(dimension, 1.0 / static_cast<double>(dimension));
  }

  std::vector<double> g(dimension);
  std::vector<double> y(dimension);
  std::vector<double> gy(dimension);
  std::vector<double> trial(dimension);
  std::vector<double> step(dimension);
  std::vector<double> dg(dimension);
  objective.gradient(x, g);
  double fx = objective.value(x);
  double alpha = 1.0;

  OptimizerReport report;
  for (;;) {
    report.residual = first_order_residual(x, g, &report.multiplier);
    if (report.residual <= options.tolerance) {
      report.converged = true;
      break;
    }
    if (report.iterations >= options.max_iterations) break;

    bool accepted = false;
    for (int halvings = 0; halvings < 200 && !accepted; ++halvings) {
      for (std::size_t i = 0; i < dimension; ++i) trial[i] = x[i] - alpha * g[i];
      y = project_to_simplex(trial);
      for (std::size_t i = 0; i < dimension; ++i) step[i] = y[i] - x[i];
      const double step_norm2 = dot(step, step);
      if (step_norm2 == 0.0) break;
      objective.gradient(y, gy);
      const double fy = objective.value(y);
      for (std::size_t i = 0; i < dimension; ++i) dg[i] = gy[i] - g[i];
      const double curvature = dot(dg, step);
      const bool smooth_enough = alpha * curvature <= step_norm2;
      const bool no_rise = fy <= fx + 1e-14 * (1.0 + std::fabs(fx));
      if (smooth_enough && no_rise) {
        accepted = true;
        x.swap(y);
        g.swap(gy);
        fx = fy;
      } else {
        alpha *= 0.5;
      }
    }
    if (!accepted) break;  // stalled at rounding level
    ++report.iterations;
    alpha *= 2.0;
  }
  report.objective = fx;
  report.argmin = std::move(x);
  return report;
}

PerturbationCertificate perturbation_certificate(
    const SimplexObjective& objective, std::span<const double> point,
    double delta) {
  PerturbationCertificate cert;
  cert.holds = true;
  cert.worst_margin = std::numeric_limits<double>::infinity();
  const double base = objective.value(point);
  std::vector<double> moved(point.begin(), point.end());
  for (std::size_t i = 0; i < point.size(); ++i) {
    for (double sign : {1.0, -1.0}) {
      moved.assign(point.begin(), point.end());
      moved[i] += sign * delta;
      const std::vector<double> y = project_to_simplex(moved);
      double shift = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) {
        shift = std::max(shift, std::fabs(y[j] - point[j]));
      }
      if (shift < 1e-15) continue;
      const double margin = objective.value(y) - base;
      cert.worst_margin = std::min(cert.worst_margin, margin);
      cert.holds = cert.holds && margin > 0.0;
      ++cert.perturbations;
    }
  }
  if (cert.perturbations == 0) cert.holds = false;
  return cert;
}

double convexity_kernel(double q, std::uint64_t crowd) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("convexity_kernel: q must lie in (0, 1)");
  }
  if (crowd < 2) throw DomainError("convexity_kernel: need c >= 2");
  return kernel_on_closed_interval(q, crowd);
}

double convexity_kernel_derivative(double q, std::uint64_t crowd) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("convexity_kernel_derivative: q must lie in [0, 1]");
  }
  if (crowd == 0) return 0.0;
  const std::uint64_t n = crowd - 1;
  CompensatedSum acc;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    acc += binom_pmf(n, q, k) / ((kk + 1.0) * (kk + 2.0));
  }
  const double c = static_cast<double>(crowd);
  return -(c + 1.0) * c * acc.value();
}

ConvexityGrid convexity_kernel_grid(std::uint64_t crowd,
                                    std::span<const double> grid) {
  ConvexityGrid out;
  out.values.reserve(grid.size());
  for (double q : grid) out.values.push_back(convexity_kernel(q, crowd));
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    out.first_differences.push_back(out.values[i] - out.values[i - 1]);
  }
  for (std::size_t i = 1; i < out.first_differences.size(); ++i) {
    out.second_differences.push_back(out.first_differences[i] -
                                     out.first_differences[i - 1]);
  }
  return out;
}

SimplexObjective crowd_objective(std::uint64_t tickets, std::uint64_t crowd,
                                 std::uint64_t support) {
  const double t = static_cast<double>(tickets);
  const double scale = (static_cast<double>(crowd) + static_cast<double>(support)) /
                       ((static_cast<double>(crowd) + 1.0) * t * t);
  SimplexObjective obj;
  obj.value = [scale, crowd](std::span<const double> q) {
    CompensatedSum acc;
    for (double qi : q) acc += kernel_on_closed_interval(qi, crowd);
    return scale * acc.value() - 1.0;
  };
  obj.gradient = [scale, crowd](std::span<const double> q,
                                std::span<double> out) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      out[i] = scale * convexity_kernel_derivative(q[i], crowd);
    }
  };
  return obj;
}

OptimizerReport minimize_return_over_crowd(std::uint64_t tickets,
                                           std::uint64_t crowd,
                                           std::uint64_t support,
                                           const SimplexOptions& options) {
  if (support < 1 || support > tickets) {
    throw DomainError("minimize_return_over_crowd: need 1 <= s <= t");
  }
  if (crowd < 2) throw DomainError("minimize_return_over_crowd: need c >= 2");
  return minimize_on_simplex(crowd_objective(tickets, crowd, support),
                             static_cast<std::size_t>(tickets), options);
}

AsymptoticReturns asymptotic_return(std::span<const double> p,
                                    std::span<const double> r,
                                    std::span<const double> q,
                                    const AsymptoticConfig& cfg) {
  validate_config(cfg);
  if (r.size() != p.size() || q.size() != p.size()) {
    throw DomainError("asymptotic_return: p, r and q must have equal length");
  }
  CompensatedSum syndicate;
  CompensatedSum crowd;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double denom = r[i] + cfg.u * q[i];
    if (denom == 0.0) {
      if (p[i] > 0.0) {
        throw DomainError("asymptotic_return: ticket " + std::to_string(i) +
                          " can be drawn but nobody holds it");
      }
      continue;
    }
    syndicate += p[i] * r[i] / denom;
    crowd += p[i] * q[i] / denom;
  }
  const double rate = jackpot_rate(cfg);
  return {rate * syndicate.value() - 1.0, rate * crowd.value() - 1.0};
}

SimplexObjective asymptotic_objective(std::span<const double> p,
                                      const AsymptoticConfig& cfg, Side side) {
  validate_config(cfg);
  std::vector<double> probs(p.begin(), p.end());
  const double rate = jackpot_rate(cfg);
  const double u = cfg.u;
  SimplexObjective obj;
  if (side == Side::kCrowd) {
    obj.value = [probs, cfg](std::span<const double> q) {
      return asymptotic_return(probs, probs, q, cfg).syndicate;
    };
    obj.gradient = [probs, rate, u](std::span<const double> q,
                                    std::span<double> out) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double d = probs[i] + u * q[i];
        out[i] = -rate * u * probs[i] * probs[i] / (d * d);
      }
    };
  } else {
    obj.value = [probs, cfg](std::span<const double> r) {
      return -asymptotic_return(probs, r, probs, cfg).syndicate;
    };
    obj.gradient = [probs, rate, u](std::span<const double> r,
                                    std::span<double> out) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        const double d = r[i] + u * probs[i];
        out[i] = -rate * u * probs[i] * probs[i] / (d * d);
      }
    };
  }
  return obj;
}

OptimizerReport asymptotic_best_response(std::span<const double> p,
                                         const AsymptoticConfig& cfg,
                                         Side side,
                                         const SimplexOptions& options) {
  if (p.size() < 2) throw DomainError("asymptotic_best_response: need t >= 2");
  if (!(cfg.u > 0.0)) throw DomainError("asymptotic_best_response: need u > 0");
  validate_probability_vector(p, "p", /*strictly_positive=*/true);
  return minimize_on_simplex(asymptotic_objective(p, cfg, side), p.size(),
                             options);
}

WinningCondition winning_condition(double carryover, double take,
                                   double stake, double crowd) {
  if (!(stake > 0.0)) throw DomainError("winning_condition: need s > 0");
  if (!(crowd >= 0.0)) throw DomainError("winning_condition: need c >= 0");
  WinningCondition out;
  out.bound = stake * (carryover / (stake + crowd) - take);
  out.holds = out.bound >= 0.0;
  return out;
}

std::vector<double> build_risk_profile(std::span<const double> p,
                                       const RiskProfile& profile) {
  validate_probability_vector(p, "p", /*strictly_positive=*/true);
  const std::vector<double>& u = profile.multipliers;
  const std::size_t t = p.size();
  if (u.size() != t) {
    throw ValidationError("risk profile: need one multiplier per ticket");
  }
  const bool seeking = profile.kind == RiskKind::kRiskSeeking;
  const std::string kind = seeking ? "risk_seeking" : "risk_averse";
  for (double m : u) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError(kind + ": multipliers must be >= 0");
    }
  }
  for (std::size_t i = 1; i < t; ++i) {
    if (seeking ? u[i] < u[i - 1] : u[i] > u[i - 1]) {
      throw ValidationError(kind + (seeking
                                        ? ": u must be nondecreasing over ranks"
                                        : ": u must be nonincreasing over ranks"));
    }
  }
  if (seeking ? !(u.front() < 1.0) : !(u.front() > 1.0)) {
    throw ValidationError(kind + (seeking ? ": u_(1) must be < 1"
                                          : ": u_(1) must be > 1"));
  }
  if (seeking ? !(u.back() > 1.0) : !(u.back() < 1.0)) {
    throw ValidationError(kind + (seeking ? ": u_(t) must be > 1"
                                          : ": u_(t) must be < 1"));
  }

  std::vector<std::size_t> rank(t);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::vector<double> q(t);
  for (std::size_t j = 0; j < t; ++j) q[rank[j]] = p[rank[j]] * u[j];
  const double total = compensated_sum(q);
  if (std::fabs(total - 1.0) > kProbabilityTolerance) {
    throw ValidationError(kind + ": sum of p_(i) u_(i) must be 1 (got " +
                          std::to_string(total) + ")");
  }
  return q;
}

std::vector<double> random_simplex_point(std::size_t dimension,
                                         CounterRng& rng) {
  std::vector<double> out(dimension);
  for (double& v : out) {
    // (bits + 0.5) / 2^53 lies strictly inside (0, 1).
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    v = -std::log(u);
  }
  const double total = compensated_sum(out);
  for (double& v : out) v /= total;
  return out;
}

OptimalityCheckReport equiprobable_optimality_check(std::uint64_t tickets,
                                                    std::uint64_t crowd,
                                                    double stake,
                                                    std::uint64_t samples,
                                                    std::uint64_t seed) {
  if (crowd < 2) throw DomainError("equiprobable_optimality_check: need c >= 2");
  if (tickets < 1) throw DomainError("equiprobable_optimality_check: need t >= 1");
  if (!(stake > 0.0)) throw DomainError("equiprobable_optimality_check: need s > 0");

  auto proportional_gain = [&](const std::vector<double>& p) {
    const LotteryConfig config = LotteryConfig::Create(p);
    const SyndicateStrategy syndicate = SyndicateStrategy::Create(stake, p);
    const CrowdStrategy crowd_strategy = CrowdStrategy::Create(crowd, p);
    return expected_win_exact(config, syndicate, crowd_strategy).expected_gain;
  };

  OptimalityCheckReport out;
  const auto n = static_cast<std::size_t>(tickets);
  out.baseline_gain =
      proportional_gain(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  out.best_sample_gain = -std::numeric_limits<double>::infinity();
  CounterRng rng(seed, 0);
  for (std::uint64_t k = 0; k < samples; ++k) {
    std::vector<double> p = random_simplex_point(n, rng);
    const double gain = proportional_gain(p);
    if (gain > out.best_sample_gain) {
      out.best_sample_gain = gain;
      out.best_sample = std::move(p);
    }
  }
  out.samples = samples;
  out.holds = samples == 0 || out.baseline_gain >= out.best_sample_gain;
  return out;
}

}  // namespace jackpot
