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


/* C interface to the jackpot library. All functions report failure through a
 * jackpot_status; the message of the most recent failure on the calling
 * thread is available from jackpot_last_error(). Output arguments are left
 * untouched on failure unless stated otherwise. */

#ifndef JACKPOT_JACKPOT_H_
#define JACKPOT_JACKPOT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(JACKPOT_BUILDING_LIBRARY)
#define JACKPOT_API __declspec(dllexport)
#else
#define JACKPOT_API __declspec(dllimport)
#endif
#else
#define JACKPOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jackpot_status {
  JACKPOT_OK = 0,
  JACKPOT_INVALID_ARGUMENT = 1,
  JACKPOT_DOMAIN_ERROR = 2,
  JACKPOT_SIZE_ERROR = 3,
  JACKPOT_NOT_CONVERGED = 4,
  JACKPOT_INTERNAL_ERROR = 5
} jackpot_status;

typedef enum jackpot_method {
  JACKPOT_METHOD_EXACT = 0,
  JACKPOT_METHOD_CLOSED_FORM = 1,
  JACKPOT_METHOD_ASYMPTOTIC = 2,
  JACKPOT_METHOD_SIMULATED = 3,
  JACKPOT_METHOD_ENUMERATED = 4
} jackpot_method;

typedef enum jackpot_poisson_mode {
  JACKPOT_POISSON_C_PLUS_ONE = 0,
  JACKPOT_POISSON_MEAN = 1
} jackpot_poisson_mode;

typedef enum jackpot_pmf_mode {
  JACKPOT_PMF_BINOMIAL = 0,
  JACKPOT_PMF_POISSON = 1
} jackpot_pmf_mode;

typedef enum jackpot_side {
  JACKPOT_SIDE_CROWD = 0,
  JACKPOT_SIDE_SYNDICATE = 1
} jackpot_side;

typedef enum jackpot_risk_kind {
  JACKPOT_RISK_SEEKING = 0,
  JACKPOT_RISK_AVERSE = 1
} jackpot_risk_kind;

typedef struct jackpot_lottery jackpot_lottery;
typedef struct jackpot_syndicate jackpot_syndicate;
typedef struct jackpot_crowd jackpot_crowd;
typedef struct jackpot_optimizer_result jackpot_optimizer_result;

typedef struct jackpot_report {
  double jackpot;
  double expected_win;
  double expected_gain;
  double expected_return;        /* valid when has_return */
  double crowd_expected_return;  /* valid when has_crowd_return */
  double carryover_probability;  /* valid when has_carryover */
  int has_return;
  int has_crowd_return;
  int has_carryover;
  jackpot_method method;
} jackpot_report;

typedef struct jackpot_simulation {
  uint64_t n_trials;
  double mean_syndicate_return;
  double std_error;
  double mean_crowd_return;
  double carryover_frequency;
  uint64_t seed;
  double mean_syndicate_gain;
} jackpot_simulation;

typedef struct jackpot_breakeven_report {
  double y;
  double s_star;
  double g_min;
  double s_zero;
  uint64_t first_profitable_integer;
} jackpot_breakeven_report;

typedef struct jackpot_table1_row {
  uint64_t k;
  double probability;
  double payoff_full;
  double contribution_full;
  double payoff_single;
  double contribution_single;
} jackpot_table1_row;

typedef struct jackpot_asymptotic_config {
  double u;
  double a_rate;
  double x;
} jackpot_asymptotic_config;

typedef struct jackpot_optimizer_options {
  double tolerance;         /* <= 0 selects the default */
  uint64_t max_iterations;  /* 0 selects the default */
} jackpot_optimizer_options;

/* Library version, e.g. "1.0.0". */
JACKPOT_API const char* jackpot_version(void);

/* Message of the last failure on this thread, or "" if none. */
JACKPOT_API const char* jackpot_last_error(void);

/* ---- Model objects ---- */

JACKPOT_API jackpot_status jackpot_lottery_create(const double* p, size_t t,
                                                  double carryover,
                                                  double take,
                                                  jackpot_lottery** out);
JACKPOT_API jackpot_status jackpot_lottery_equiprobable(size_t t,
                                                        double carryover,
                                                        double take,
                                                        jackpot_lottery** out);
JACKPOT_API size_t jackpot_lottery_tickets(const jackpot_lottery* lottery);
JACKPOT_API void jackpot_lottery_destroy(jackpot_lottery* lottery);

JACKPOT_API jackpot_status jackpot_syndicate_create(double total_stake,
                                                    const double* r, size_t t,
                                                    jackpot_syndicate** out);
JACKPOT_API jackpot_status jackpot_syndicate_from_stakes(
    const double* stakes, size_t t, jackpot_syndicate** out);
JACKPOT_API double jackpot_syndicate_total_stake(const jackpot_syndicate* s);
JACKPOT_API void jackpot_syndicate_destroy(jackpot_syndicate* syndicate);

JACKPOT_API jackpot_status jackpot_crowd_create(uint64_t bettors,
                                                const double* q, size_t t,
                                                jackpot_crowd** out);
JACKPOT_API jackpot_status jackpot_crowd_grouped(size_t t, uint64_t groups,
                                                 uint64_t tickets_per_group,
                                                 jackpot_crowd** out);
JACKPOT_API void jackpot_crowd_destroy(jackpot_crowd* crowd);

/* Integer stakes summing to `total`, largest remainders first. */
JACKPOT_API jackpot_status jackpot_integralize(const double* weights, size_t t,
                                               int64_t total, int64_t* out);

/* ---- Expectations ---- */

JACKPOT_API jackpot_status jackpot_expected_win_exact(
    const jackpot_lottery* lottery, const jackpot_syndicate* syndicate,
    const jackpot_crowd* crowd, jackpot_report* out);
JACKPOT_API jackpot_status jackpot_enumerate_exact(
    const jackpot_lottery* lottery, const jackpot_syndicate* syndicate,
    const jackpot_crowd* crowd, jackpot_report* out);
/* workers = 0 uses every hardware thread; the result does not depend on it. */
JACKPOT_API jackpot_status jackpot_simulate(const jackpot_lottery* lottery,
                                            const jackpot_syndicate* syndicate,
                                            const jackpot_crowd* crowd,
                                            uint64_t n_trials, uint64_t seed,
                                            unsigned workers,
                                            jackpot_simulation* out);

JACKPOT_API jackpot_status jackpot_binom_pmf(uint64_t c, double q, uint64_t k,
                                             double* out);
JACKPOT_API jackpot_status jackpot_expected_share_factor(uint64_t c, double q,
                                                         double* out);
JACKPOT_API jackpot_status jackpot_poisson_share_approx(
    uint64_t c, double q, jackpot_poisson_mode mode, double* out,
    int* outside_validity_regime);

/* ---- Closed forms ---- */

JACKPOT_API jackpot_status jackpot_lemma1_expected_win(uint64_t t, uint64_t c,
                                                       uint64_t s,
                                                       const double* q,
                                                       double* out);
JACKPOT_API jackpot_status jackpot_uniform_return(uint64_t t, uint64_t c,
                                                  uint64_t s, double* out);
JACKPOT_API jackpot_status jackpot_uniform_gain(uint64_t t, uint64_t c,
                                                double s, double* out);
JACKPOT_API jackpot_status jackpot_breakeven(uint64_t t, uint64_t c,
                                             jackpot_breakeven_report* out);
/* `rows` must hold k_max + 1 entries. */
JACKPOT_API jackpot_status jackpot_table1(uint64_t t, uint64_t c,
                                          uint64_t k_max,
                                          jackpot_pmf_mode mode,
                                          jackpot_table1_row* rows,
                                          double* sum_full,
                                          double* sum_single);
JACKPOT_API jackpot_status jackpot_group_adjusted_win(
    uint64_t t, uint64_t c, uint64_t s, uint64_t groups,
    uint64_t tickets_per_group, double* adjusted_win, double* ratio);
JACKPOT_API jackpot_status jackpot_multiples_gain(uint64_t n, uint64_t t,
                                                  uint64_t c, double* out);
/* `out` must hold t entries. */
JACKPOT_API jackpot_status jackpot_optimal_budget_allocation(uint64_t s,
                                                             uint64_t t,
                                                             int64_t* out);
JACKPOT_API jackpot_status jackpot_unpopular_factor_return(
    const double* factors, size_t n, double base, double* out);
JACKPOT_API jackpot_status jackpot_matheson_expected_value(
    double syndicate_tickets, double crowd_tickets, double carryover,
    double jackpot_fraction, double ticket_cost, double win_probability,
    double* out);

/* ---- Equilibrium ---- */

JACKPOT_API jackpot_status jackpot_asymptotic_return(
    const double* p, const double* r, const double* q, size_t t,
    jackpot_asymptotic_config cfg, double* syndicate, double* crowd);
JACKPOT_API jackpot_status jackpot_winning_condition(double carryover,
                                                     double take, double stake,
                                                     double crowd, int* holds,
                                                     double* bound);
JACKPOT_API jackpot_status jackpot_convexity_kernel(double q, uint64_t c,
                                                    double* out);
JACKPOT_API jackpot_status jackpot_convexity_kernel_derivative(double q,
                                                               uint64_t c,
                                                               double* out);
/* `q_out` must hold t entries. */
JACKPOT_API jackpot_status jackpot_build_risk_profile(
    const double* p, const double* multipliers, size_t t,
    jackpot_risk_kind kind, double* q_out);
JACKPOT_API jackpot_status jackpot_equiprobable_optimality_check(
    uint64_t t, uint64_t c, double s, uint64_t samples, uint64_t seed,
    double* baseline_gain, double* best_sample_gain, int* holds);

/* Solvers return JACKPOT_NOT_CONVERGED with a valid *out when the iteration
 * budget runs out; the caller owns *out in both cases. A perturbation
 * certificate (delta = 1e-3) is computed at the returned point. */
JACKPOT_API jackpot_status jackpot_minimize_return_over_crowd(
    uint64_t t, uint64_t c, uint64_t s, const jackpot_optimizer_options* opts,
    jackpot_optimizer_result** out);
JACKPOT_API jackpot_status jackpot_asymptotic_best_response(
    const double* p, size_t t, jackpot_asymptotic_config cfg,
    jackpot_side side, const jackpot_optimizer_options* opts,
    jackpot_optimizer_result** out);

JACKPOT_API size_t jackpot_optimizer_result_dimension(
    const jackpot_optimizer_result* result);
/* Copies the minimizer into `out`, which must hold dimension entries. */
JACKPOT_API void jackpot_optimizer_result_argmin(
    const jackpot_optimizer_result* result, double* out);
JACKPOT_API double jackpot_optimizer_result_objective(
    const jackpot_optimizer_result* result);
JACKPOT_API double jackpot_optimizer_result_multiplier(
    const jackpot_optimizer_result* result);
JACKPOT_API double jackpot_optimizer_result_residual(
    const jackpot_optimizer_result* result);
JACKPOT_API uint64_t jackpot_optimizer_result_iterations(
    const jackpot_optimizer_result* result);
JACKPOT_API int jackpot_optimizer_result_converged(
    const jackpot_optimizer_result* result);
JACKPOT_API int jackpot_optimizer_result_certificate(
    const jackpot_optimizer_result* result, double* worst_margin);
JACKPOT_API void jackpot_optimizer_result_destroy(
    jackpot_optimizer_result* result);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* JACKPOT_JACKPOT_H_ */
