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


#include "jackpot/jackpot.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jackpot/closed_forms.hpp"
#include "jackpot/equilibrium.hpp"
#include "jackpot/error.hpp"
#include "jackpot/exact_engine.hpp"
#include "jackpot/model.hpp"
#include "jackpot/simulator.hpp"

struct jackpot_lottery {
  jackpot::LotteryConfig impl;
};

struct jackpot_syndicate {
  jackpot::SyndicateStrategy impl;
};

struct jackpot_crowd {
  jackpot::CrowdStrategy impl;
};

struct jackpot_optimizer_result {
  jackpot::OptimizerReport report;
  jackpot::PerturbationCertificate certificate;
};

namespace {

thread_local std::string last_error;

jackpot_status fail(jackpot_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
jackpot_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const jackpot::ValidationError& e) {
    return fail(JACKPOT_INVALID_ARGUMENT, e.what());
  } catch (const jackpot::DomainError& e) {
    return fail(JACKPOT_DOMAIN_ERROR, e.what());
  } catch (const jackpot::SizeError& e) {
    return fail(JACKPOT_SIZE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(JACKPOT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(JACKPOT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(JACKPOT_INTERNAL_ERROR, "unknown error");
  }
}

void require_arg(bool ok, const char* message) {
  if (!ok) throw jackpot::ValidationError(message);
}

std::vector<double> copy_vector(const double* data, size_t n,
                                const char* name) {
  require_arg(data != nullptr || n == 0,
              (std::string(name) + ": null pointer").c_str());
  return std::vector<double>(data, data + n);
}

jackpot_method to_c(jackpot::Method m) {
  switch (m) {
    case jackpot::Method::kExact: return JACKPOT_METHOD_EXACT;
    case jackpot::Method::kClosedForm: return JACKPOT_METHOD_CLOSED_FORM;
    case jackpot::Method::kAsymptotic: return JACKPOT_METHOD_ASYMPTOTIC;
    case jackpot::Method::kSimulated: return JACKPOT_METHOD_SIMULATED;
    case jackpot::Method::kEnumerated: return JACKPOT_METHOD_ENUMERATED;
  }
  return JACKPOT_METHOD_EXACT;
}

void fill(const jackpot::ExpectationReport& in, jackpot_report* out) {
  *out = jackpot_report{};
  out->jackpot = in.jackpot;
  out->expected_win = in.expected_win;
  out->expected_gain = in.expected_gain;
  out->has_return = in.expected_return.has_value();
  out->expected_return = in.expected_return.value_or(0.0);
  out->has_crowd_return = in.crowd_expected_return.has_value();
  out->crowd_expected_return = in.crowd_expected_return.value_or(0.0);
  out->has_carryover = in.carryover_probability.has_value();
  out->carryover_probability = in.carryover_probability.value_or(0.0);
  out->method = to_c(in.method);
}

jackpot::SimplexOptions to_options(const jackpot_optimizer_options* opts) {
  jackpot::SimplexOptions out;
  if (opts != nullptr) {
    if (opts->tolerance > 0.0) out.tolerance = opts->tolerance;
    if (opts->max_iterations > 0) out.max_iterations = opts->max_iterations;
  }
  return out;
}

jackpot::AsymptoticConfig to_config(jackpot_asymptotic_config cfg) {
  return {cfg.u, cfg.a_rate, cfg.x};
}

jackpot_status finish_solve(const jackpot::SimplexObjective& objective,
                            jackpot::OptimizerReport report,
                            jackpot_optimizer_result** out) {
  auto result = std::make_unique<jackpot_optimizer_result>();
  result->certificate =
      jackpot::perturbation_certificate(objective, report.argmin);
  result->report = std::move(report);
  const bool converged = result->report.converged;
  *out = result.release();
  if (!converged) {
    return fail(JACKPOT_NOT_CONVERGED, "optimizer did not converge");
  }
  return JACKPOT_OK;
}

}  // namespace

extern "C" {

const char* jackpot_version(void) { return "1.0.0"; }

const char* jackpot_last_error(void) { return last_error.c_str(); }

jackpot_status jackpot_lottery_create(const double* p, size_t t,
                                      double carryover, double take,
                                      jackpot_lottery** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    auto config =
        jackpot::LotteryConfig::Create(copy_vector(p, t, "p"), carryover, take);
    *out = new jackpot_lottery{std::move(config)};
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_lottery_equiprobable(size_t t, double carryover,
                                            double take,
                                            jackpot_lottery** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = new jackpot_lottery{
        jackpot::LotteryConfig::Equiprobable(t, carryover, take)};
    return JACKPOT_OK;
  });
}

size_t jackpot_lottery_tickets(const jackpot_lottery* lottery) {
  return lottery == nullptr ? 0 : lottery->impl.tickets();
}

void jackpot_lottery_destroy(jackpot_lottery* lottery) { delete lottery; }

jackpot_status jackpot_syndicate_create(double total_stake, const double* r,
                                        size_t t, jackpot_syndicate** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = new jackpot_syndicate{
        jackpot::SyndicateStrategy::Create(total_stake, copy_vector(r, t, "r"))};
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_syndicate_from_stakes(const double* stakes, size_t t,
                                             jackpot_syndicate** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = new jackpot_syndicate{jackpot::SyndicateStrategy::FromStakes(
        copy_vector(stakes, t, "stakes"))};
    return JACKPOT_OK;
  });
}

double jackpot_syndicate_total_stake(const jackpot_syndicate* s) {
  return s == nullptr ? 0.0 : s->impl.total_stake();
}

void jackpot_syndicate_destroy(jackpot_syndicate* syndicate) {
  delete syndicate;
}

jackpot_status jackpot_crowd_create(uint64_t bettors, const double* q,
                                    size_t t, jackpot_crowd** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = new jackpot_crowd{
        jackpot::CrowdStrategy::Create(bettors, copy_vector(q, t, "q"))};
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_crowd_grouped(size_t t, uint64_t groups,
                                     uint64_t tickets_per_group,
                                     jackpot_crowd** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = new jackpot_crowd{
        jackpot::CrowdStrategy::Grouped(t, groups, tickets_per_group)};
    return JACKPOT_OK;
  });
}

void jackpot_crowd_destroy(jackpot_crowd* crowd) { delete crowd; }

jackpot_status jackpot_integralize(const double* weights, size_t t,
                                   int64_t total, int64_t* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    const auto w = copy_vector(weights, t, "weights");
    const auto stakes = jackpot::integralize(w, total);
    std::copy(stakes.begin(), stakes.end(), out);
    return JACKPOT_OK;
  });
}

#define JACKPOT_REQUIRE_MODEL()                                        \
  require_arg(lottery != nullptr && syndicate != nullptr &&            \
                  crowd != nullptr && out != nullptr,                  \
              "null handle")

jackpot_status jackpot_expected_win_exact(const jackpot_lottery* lottery,
                                          const jackpot_syndicate* syndicate,
                                          const jackpot_crowd* crowd,
                                          jackpot_report* out) {
  return guarded([&] {
    JACKPOT_REQUIRE_MODEL();
    fill(jackpot::expected_win_exact(lottery->impl, syndicate->impl,
                                     crowd->impl),
         out);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_enumerate_exact(const jackpot_lottery* lottery,
                                       const jackpot_syndicate* syndicate,
                                       const jackpot_crowd* crowd,
                                       jackpot_report* out) {
  return guarded([&] {
    JACKPOT_REQUIRE_MODEL();
    fill(jackpot::enumerate_exact(lottery->impl, syndicate->impl, crowd->impl),
         out);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_simulate(const jackpot_lottery* lottery,
                                const jackpot_syndicate* syndicate,
                                const jackpot_crowd* crowd, uint64_t n_trials,
                                uint64_t seed, unsigned workers,
                                jackpot_simulation* out) {
  return guarded([&] {
    JACKPOT_REQUIRE_MODEL();
    const auto r = jackpot::simulate(lottery->impl, syndicate->impl,
                                     crowd->impl, n_trials, seed, workers);
    *out = jackpot_simulation{r.n_trials,           r.mean_syndicate_return,
                              r.std_error,          r.mean_crowd_return,
                              r.carryover_frequency, r.seed,
                              r.mean_syndicate_gain};
    return JACKPOT_OK;
  });
}

#undef JACKPOT_REQUIRE_MODEL

jackpot_status jackpot_binom_pmf(uint64_t c, double q, uint64_t k,
                                 double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::binom_pmf(c, q, k);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_expected_share_factor(uint64_t c, double q,
                                             double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::expected_share_factor(c, q).value;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_poisson_share_approx(uint64_t c, double q,
                                            jackpot_poisson_mode mode,
                                            double* out,
                                            int* outside_validity_regime) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    const auto r = jackpot::poisson_share_approx(
        c, q,
        mode == JACKPOT_POISSON_MEAN ? jackpot::PoissonMode::kMean
                                     : jackpot::PoissonMode::kCPlusOne);
    *out = r.value;
    if (outside_validity_regime != nullptr) {
      *outside_validity_regime = r.outside_validity_regime;
    }
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_lemma1_expected_win(uint64_t t, uint64_t c, uint64_t s,
                                           const double* q, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::lemma1_expected_win(t, c, s, copy_vector(q, t, "q"));
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_uniform_return(uint64_t t, uint64_t c, uint64_t s,
                                      double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::uniform_return(t, c, s);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_uniform_gain(uint64_t t, uint64_t c, double s,
                                    double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::uniform_gain(t, c, s);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_breakeven(uint64_t t, uint64_t c,
                                 jackpot_breakeven_report* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    const auto r = jackpot::breakeven(t, c);
    *out = {r.y, r.s_star, r.g_min, r.s_zero, r.first_profitable_integer};
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_table1(uint64_t t, uint64_t c, uint64_t k_max,
                              jackpot_pmf_mode mode, jackpot_table1_row* rows,
                              double* sum_full, double* sum_single) {
  return guarded([&] {
    require_arg(rows != nullptr, "rows: null pointer");
    const auto table = jackpot::table1(
        t, c, k_max,
        mode == JACKPOT_PMF_BINOMIAL ? jackpot::PmfMode::kBinomial
                                     : jackpot::PmfMode::kPoisson);
    for (size_t i = 0; i < table.rows.size(); ++i) {
      const auto& r = table.rows[i];
      rows[i] = {r.k,           r.probability,   r.payoff_full,
                 r.contribution_full, r.payoff_single, r.contribution_single};
    }
    if (sum_full != nullptr) *sum_full = table.sum_contribution_full;
    if (sum_single != nullptr) *sum_single = table.sum_contribution_single;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_group_adjusted_win(uint64_t t, uint64_t c, uint64_t s,
                                          uint64_t groups,
                                          uint64_t tickets_per_group,
                                          double* adjusted_win,
                                          double* ratio) {
  return guarded([&] {
    const auto r =
        jackpot::group_adjusted_win(t, c, s, groups, tickets_per_group);
    if (adjusted_win != nullptr) *adjusted_win = r.adjusted_win;
    if (ratio != nullptr) *ratio = r.ratio_to_ungrouped;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_multiples_gain(uint64_t n, uint64_t t, uint64_t c,
                                      double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::multiples_gain(n, t, c);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_optimal_budget_allocation(uint64_t s, uint64_t t,
                                                 int64_t* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    const auto stakes = jackpot::optimal_budget_allocation(s, t);
    std::copy(stakes.begin(), stakes.end(), out);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_unpopular_factor_return(const double* factors, size_t n,
                                               double base, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::unpopular_factor_return(
        copy_vector(factors, n, "factors"), base);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_matheson_expected_value(
    double syndicate_tickets, double crowd_tickets, double carryover,
    double jackpot_fraction, double ticket_cost, double win_probability,
    double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    jackpot::MathesonInputs in;
    in.syndicate_tickets = syndicate_tickets;
    in.crowd_tickets = crowd_tickets;
    in.carryover = carryover;
    in.jackpot_fraction = jackpot_fraction;
    in.ticket_cost = ticket_cost;
    in.win_probability = win_probability;
    *out = jackpot::matheson_expected_value(in);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_asymptotic_return(const double* p, const double* r,
                                         const double* q, size_t t,
                                         jackpot_asymptotic_config cfg,
                                         double* syndicate, double* crowd) {
  return guarded([&] {
    const auto out = jackpot::asymptotic_return(
        copy_vector(p, t, "p"), copy_vector(r, t, "r"),
        copy_vector(q, t, "q"), to_config(cfg));
    if (syndicate != nullptr) *syndicate = out.syndicate;
    if (crowd != nullptr) *crowd = out.crowd;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_winning_condition(double carryover, double take,
                                         double stake, double crowd,
                                         int* holds, double* bound) {
  return guarded([&] {
    const auto w = jackpot::winning_condition(carryover, take, stake, crowd);
    if (holds != nullptr) *holds = w.holds;
    if (bound != nullptr) *bound = w.bound;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_convexity_kernel(double q, uint64_t c, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::convexity_kernel(q, c);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_convexity_kernel_derivative(double q, uint64_t c,
                                                   double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    *out = jackpot::convexity_kernel_derivative(q, c);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_build_risk_profile(const double* p,
                                          const double* multipliers, size_t t,
                                          jackpot_risk_kind kind,
                                          double* q_out) {
  return guarded([&] {
    require_arg(q_out != nullptr, "q_out: null pointer");
    jackpot::RiskProfile profile;
    profile.multipliers = copy_vector(multipliers, t, "multipliers");
    profile.kind = kind == JACKPOT_RISK_AVERSE
                       ? jackpot::RiskKind::kRiskAverse
                       : jackpot::RiskKind::kRiskSeeking;
    const auto q = jackpot::build_risk_profile(copy_vector(p, t, "p"), profile);
    std::copy(q.begin(), q.end(), q_out);
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_equiprobable_optimality_check(
    uint64_t t, uint64_t c, double s, uint64_t samples, uint64_t seed,
    double* baseline_gain, double* best_sample_gain, int* holds) {
  return guarded([&] {
    const auto r =
        jackpot::equiprobable_optimality_check(t, c, s, samples, seed);
    if (baseline_gain != nullptr) *baseline_gain = r.baseline_gain;
    if (best_sample_gain != nullptr) *best_sample_gain = r.best_sample_gain;
    if (holds != nullptr) *holds = r.holds;
    return JACKPOT_OK;
  });
}

jackpot_status jackpot_minimize_return_over_crowd(
    uint64_t t, uint64_t c, uint64_t s, const jackpot_optimizer_options* opts,
    jackpot_optimizer_result** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    auto report =
        jackpot::minimize_return_over_crowd(t, c, s, to_options(opts));
    return finish_solve(jackpot::crowd_objective(t, c, s), std::move(report),
                        out);
  });
}

jackpot_status jackpot_asymptotic_best_response(
    const double* p, size_t t, jackpot_asymptotic_config cfg,
    jackpot_side side, const jackpot_optimizer_options* opts,
    jackpot_optimizer_result** out) {
  return guarded([&] {
    require_arg(out != nullptr, "out: null pointer");
    const auto probs = copy_vector(p, t, "p");
    const auto s = side == JACKPOT_SIDE_SYNDICATE ? jackpot::Side::kSyndicate
                                                  : jackpot::Side::kCrowd;
    auto report = jackpot::asymptotic_best_response(probs, to_config(cfg), s,
                                                    to_options(opts));
    return finish_solve(jackpot::asymptotic_objective(probs, to_config(cfg), s),
                        std::move(report), out);
  });
}

size_t jackpot_optimizer_result_dimension(
    const jackpot_optimizer_result* result) {
  return result == nullptr ? 0 : result->report.argmin.size();
}

void jackpot_optimizer_result_argmin(const jackpot_optimizer_result* result,
                                     double* out) {
  if (result == nullptr || out == nullptr) return;
  std::copy(result->report.argmin.begin(), result->report.argmin.end(), out);
}

double jackpot_optimizer_result_objective(
    const jackpot_optimizer_result* result) {
  return result == nullptr ? 0.0 : result->report.objective;
}

double jackpot_optimizer_result_multiplier(
    const jackpot_optimizer_result* result) {
  return result == nullptr ? 0.0 : result->report.multiplier;
}

double jackpot_optimizer_result_residual(
    const jackpot_optimizer_result* result) {
  return result == nullptr ? 0.0 : result->report.residual;
}

uint64_t jackpot_optimizer_result_iterations(
    const jackpot_optimizer_result* result) {
  return result == nullptr ? 0 : result->report.iterations;
}

int jackpot_optimizer_result_converged(const jackpot_optimizer_result* result) {
  return result != nullptr && result->report.converged;
}

int jackpot_optimizer_result_certificate(
    const jackpot_optimizer_result* result, double* worst_margin) {
  if (result == nullptr) return 0;
  if (worst_margin != nullptr) *worst_margin = result->certificate.worst_margin;
  return result->certificate.holds;
}

void jackpot_optimizer_result_destroy(jackpot_optimizer_result* result) {
  delete result;
}

}  // extern "C"
