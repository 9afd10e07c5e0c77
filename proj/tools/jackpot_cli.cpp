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


// Batch command-line front end. Everything numeric goes through the C API in
// jackpot/jackpot.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jackpot/jackpot.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSize = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitInternal = 1;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& message) {
  throw CliError{kExitUsage, message};
}

// Flag names the library uses as message prefixes.
const char* const kFlagNames[] = {"p", "q", "r", "s", "t", "c", "a", "x"};

void check(jackpot_status status, const std::string& context = "") {
  if (status == JACKPOT_OK) return;
  std::string message = jackpot_last_error();
  for (const char* name : kFlagNames) {
    const std::string prefix = std::string(name) + ":";
    if (message.rfind(prefix, 0) == 0) {
      message = "--" + message;
      break;
    }
  }
  if (!context.empty()) message = context + ": " + message;
  switch (status) {
    case JACKPOT_INVALID_ARGUMENT:
    case JACKPOT_DOMAIN_ERROR:
      throw CliError{kExitUsage, message};
    case JACKPOT_SIZE_ERROR:
      throw CliError{kExitSize, message};
    case JACKPOT_NOT_CONVERGED:
      throw CliError{kExitNotConverged, message};
    default:
      throw CliError{kExitInternal, message};
  }
}

// Rounds to the 10 significant digits that are printed.
double sig10(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Json num(double v) { return std::isfinite(v) ? Json(sig10(v)) : Json(nullptr); }

Json opt_num(bool has, double v) { return has ? num(v) : Json(nullptr); }

std::string opt_fmt(bool has, double v) { return has ? fmt(v) : "undefined"; }

struct LotteryDeleter {
  void operator()(jackpot_lottery* p) const { jackpot_lottery_destroy(p); }
};
struct SyndicateDeleter {
  void operator()(jackpot_syndicate* p) const { jackpot_syndicate_destroy(p); }
};
struct CrowdDeleter {
  void operator()(jackpot_crowd* p) const { jackpot_crowd_destroy(p); }
};
struct ResultDeleter {
  void operator()(jackpot_optimizer_result* p) const {
    jackpot_optimizer_result_destroy(p);
  }
};
using Lottery = std::unique_ptr<jackpot_lottery, LotteryDeleter>;
using Syndicate = std::unique_ptr<jackpot_syndicate, SyndicateDeleter>;
using Crowd = std::unique_ptr<jackpot_crowd, CrowdDeleter>;
using OptResult = std::unique_ptr<jackpot_optimizer_result, ResultDeleter>;

// `uniform`, `0.2,0.3,0.5` or `@file.csv` with one value per line.
std::vector<double> parse_vector(const std::string& spec, std::size_t t,
                                 const std::string& flag) {
  if (spec == "uniform") {
    return std::vector<double>(t, 1.0 / static_cast<double>(t));
  }
  std::vector<std::string> items;
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) usage(flag + ": cannot open " + spec.substr(1));
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      items.push_back(line.substr(first));
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
  }
  std::vector<double> out;
  for (const auto& item : items) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      usage(flag + ": cannot parse '" + item + "' as a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) usage(flag + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.size() != t) {
    usage(flag + ": expected " + std::to_string(t) + " entries, got " +
          std::to_string(out.size()));
  }
  return out;
}

struct Range {
  double lo, hi, step;
};

// lo:hi or lo:hi:step.
Range parse_range(const std::string& spec, const std::string& flag,
                  double default_step) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      usage(flag + ": cannot parse '" + spec + "'");
    }
  }
  if (parts.size() < 2 || parts.size() > 3) {
    usage(flag + ": expected lo:hi or lo:hi:step");
  }
  Range r{parts[0], parts[1], parts.size() == 3 ? parts[2] : default_step};
  if (!(r.step > 0.0)) usage(flag + ": step must be positive");
  if (r.hi < r.lo) usage(flag + ": empty range");
  return r;
}

std::vector<double> range_points(const Range& r) {
  std::vector<double> out;
  const auto n = static_cast<std::uint64_t>(
      std::floor((r.hi - r.lo) / r.step + 1e-9));
  for (std::uint64_t i = 0; i <= n; ++i) {
    out.push_back(r.lo + static_cast<double>(i) * r.step);
  }
  return out;
}

bool is_integer(double v) { return std::floor(v) == v; }

// Everything the model needs, as parsed from flags.
struct ModelFlags {
  std::uint64_t t = 0;
  std::uint64_t c = 0;
  double s = 0.0;
  double a = 0.0;
  double x = 0.0;
  std::string p = "uniform";
  std::string q = "uniform";
  std::string r;
  std::uint64_t groups = 0;
  std::uint64_t per_group = 0;

  void add_to(CLI::App* cmd, bool need_s = true) {
    cmd->add_option("--t", t, "number of tickets")->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--c", c, "crowd size (tickets bought by the crowd)")
        ->required();
    auto* so = cmd->add_option("--s", s, "syndicate stake")
                   ->check(CLI::NonNegativeNumber);
    if (need_s) so->required();
    cmd->add_option("--a", a, "carryover pool")->check(CLI::NonNegativeNumber);
    cmd->add_option("--x", x, "take rate in [0, 1)");
    cmd->add_option("--p", p, "drawing probabilities: uniform, list or @file");
    cmd->add_option("--q", q, "crowd selection: uniform, list or @file");
    cmd->add_option("--r", r,
                    "syndicate weights: uniform, list or @file (default: one "
                    "unit per ticket on the first s tickets)");
    cmd->add_option("--groups", groups, "crowd as g groups of l tickets");
    cmd->add_option("--l", per_group, "tickets per group");
  }
};

struct Model {
  Lottery lottery;
  Syndicate syndicate;
  Crowd crowd;
};

Syndicate make_syndicate(const ModelFlags& f) {
  jackpot_syndicate* raw = nullptr;
  if (!f.r.empty()) {
    const auto r = parse_vector(f.r, f.t, "--r");
    check(jackpot_syndicate_create(f.s, r.data(), r.size(), &raw), "--r");
  } else if (f.s >= 1.0 && is_integer(f.s) &&
             f.s <= static_cast<double>(f.t)) {
    std::vector<double> r(f.t, 0.0);
    const auto n = static_cast<std::size_t>(f.s);
    for (std::size_t i = 0; i < n; ++i) r[i] = 1.0 / f.s;
    check(jackpot_syndicate_create(f.s, r.data(), r.size(), &raw), "--s");
  } else if (f.s >= 1.0 && is_integer(f.s)) {
    std::vector<std::int64_t> stakes(f.t);
    check(jackpot_optimal_budget_allocation(static_cast<std::uint64_t>(f.s),
                                            f.t, stakes.data()),
          "--s");
    std::vector<double> st(stakes.begin(), stakes.end());
    check(jackpot_syndicate_from_stakes(st.data(), st.size(), &raw), "--s");
  } else {
    const std::vector<double> r(f.t, 1.0 / static_cast<double>(f.t));
    check(jackpot_syndicate_create(f.s, r.data(), r.size(), &raw), "--s");
  }
  return Syndicate(raw);
}

Model make_model(const ModelFlags& f) {
  Model m;
  const auto p = parse_vector(f.p, f.t, "--p");
  jackpot_lottery* lottery = nullptr;
  check(jackpot_lottery_create(p.data(), p.size(), f.a, f.x, &lottery));
  m.lottery.reset(lottery);
  m.syndicate = make_syndicate(f);
  jackpot_crowd* crowd = nullptr;
  if (f.groups > 0 || f.per_group > 0) {
    if (f.groups == 0 || f.per_group == 0) {
      usage("--groups and --l must be given together");
    }
    if (f.groups * f.per_group != f.c) usage("--groups: need groups * l = c");
    if (f.q != "uniform") usage("--q: grouped crowds pick uniformly");
    check(jackpot_crowd_grouped(f.t, f.groups, f.per_group, &crowd), "--l");
  } else {
    const auto q = parse_vector(f.q, f.t, "--q");
    check(jackpot_crowd_create(f.c, q.data(), q.size(), &crowd), "--q");
  }
  m.crowd.reset(crowd);
  return m;
}

Json model_json(const ModelFlags& f) {
  Json j;
  j["t"] = f.t;
  j["c"] = f.c;
  j["s"] = f.s;
  j["a"] = f.a;
  j["x"] = f.x;
  j["p"] = f.p;
  j["q"] = f.q;
  j["r"] = f.r.empty() ? Json(nullptr) : Json(f.r);
  if (f.groups > 0) {
    j["groups"] = f.groups;
    j["l"] = f.per_group;
  }
  return j;
}

// A command's output in both encodings.
struct Output {
  Json json;
  std::string csv;
};

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  return out + "\n";
}

Json report_json(const jackpot_report& r, const char* method) {
  Json j;
  j["method"] = method;
  j["jackpot"] = num(r.jackpot);
  j["expected_win"] = num(r.expected_win);
  j["expected_gain"] = num(r.expected_gain);
  j["expected_return"] = opt_num(r.has_return, r.expected_return);
  j["crowd_expected_return"] =
      opt_num(r.has_crowd_return, r.crowd_expected_return);
  j["carryover_probability"] =
      opt_num(r.has_carryover, r.carryover_probability);
  return j;
}

std::string report_csv(const jackpot_report& r, const char* method) {
  return csv_line({"method", "jackpot", "expected_win", "expected_gain",
                   "expected_return", "crowd_expected_return",
                   "carryover_probability"}) +
         csv_line({method, fmt(r.jackpot), fmt(r.expected_win),
                   fmt(r.expected_gain),
                   opt_fmt(r.has_return, r.expected_return),
                   opt_fmt(r.has_crowd_return, r.crowd_expected_return),
                   opt_fmt(r.has_carryover, r.carryover_probability)});
}

Json simulation_json(const jackpot_simulation& r) {
  Json j;
  j["n_trials"] = r.n_trials;
  j["mean_syndicate_return"] = num(r.mean_syndicate_return);
  j["std_error"] = num(r.std_error);
  j["mean_crowd_return"] = num(r.mean_crowd_return);
  j["carryover_frequency"] = num(r.carryover_frequency);
  j["seed"] = r.seed;
  j["mean_syndicate_gain"] = num(r.mean_syndicate_gain);
  return j;
}

std::string simulation_csv(const jackpot_simulation& r) {
  return csv_line({"n_trials", "mean_syndicate_return", "std_error",
                   "mean_crowd_return", "carryover_frequency", "seed",
                   "mean_syndicate_gain"}) +
         csv_line({std::to_string(r.n_trials), fmt(r.mean_syndicate_return),
                   fmt(r.std_error), fmt(r.mean_crowd_return),
                   fmt(r.carryover_frequency), std::to_string(r.seed),
                   fmt(r.mean_syndicate_gain)});
}

// ---- evaluate ----

struct EvaluateFlags {
  ModelFlags model;
  std::string method = "exact";
  std::uint64_t trials = 1000000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
};

bool is_uniform_spec(const std::string& spec) { return spec == "uniform"; }

Output run_evaluate(const EvaluateFlags& f) {
  const ModelFlags& m = f.model;
  jackpot_report report{};
  Output out;
  if (f.method == "exact" || f.method == "enumerate") {
    const Model model = make_model(m);
    check(f.method == "exact"
              ? jackpot_expected_win_exact(model.lottery.get(),
                                           model.syndicate.get(),
                                           model.crowd.get(), &report)
              : jackpot_enumerate_exact(model.lottery.get(),
                                        model.syndicate.get(),
                                        model.crowd.get(), &report));
  } else if (f.method == "lemma1") {
    if (!is_uniform_spec(m.p) || m.a != 0.0 || m.x != 0.0) {
      usage("--method: lemma1 needs an equiprobable lottery with a = x = 0");
    }
    if (!m.r.empty() || !is_integer(m.s) || m.s > static_cast<double>(m.t)) {
      usage("--method: lemma1 needs an integer s <= t on distinct tickets");
    }
    if (m.groups > 0) usage("--groups: not supported by lemma1");
    const auto q = parse_vector(m.q, m.t, "--q");
    const auto s = static_cast<std::uint64_t>(m.s);
    double win = 0.0;
    check(jackpot_lemma1_expected_win(m.t, m.c, s, q.data(), &win));
    report.jackpot = m.s + static_cast<double>(m.c);
    report.expected_win = win;
    report.expected_gain = win - m.s;
    report.has_return = m.s > 0.0;
    report.expected_return = m.s > 0.0 ? (win - m.s) / m.s : 0.0;
    report.method = JACKPOT_METHOD_CLOSED_FORM;
  } else if (f.method == "asymptotic") {
    if (!(m.s > 0.0)) usage("--s: asymptotic method needs s > 0");
    if (m.groups > 0) usage("--groups: not supported by asymptotic");
    const auto p = parse_vector(m.p, m.t, "--p");
    const auto q = parse_vector(m.q, m.t, "--q");
    std::vector<double> r;
    if (!m.r.empty()) {
      r = parse_vector(m.r, m.t, "--r");
    } else {
      r.assign(m.t, 0.0);
      if (m.s >= 1.0 && is_integer(m.s) && m.s <= static_cast<double>(m.t)) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(m.s); ++i) {
          r[i] = 1.0 / m.s;
        }
      } else {
        r.assign(m.t, 1.0 / static_cast<double>(m.t));
      }
    }
    const jackpot_asymptotic_config cfg{static_cast<double>(m.c) / m.s,
                                        m.a / m.s, m.x};
    double syn = 0.0;
    double crowd = 0.0;
    check(jackpot_asymptotic_return(p.data(), r.data(), q.data(), m.t, cfg,
                                    &syn, &crowd));
    report.jackpot = m.a + (m.s + static_cast<double>(m.c)) * (1.0 - m.x);
    report.expected_gain = m.s * syn;
    report.expected_win = report.expected_gain + m.s;
    report.has_return = 1;
    report.expected_return = syn;
    report.has_crowd_return = m.c > 0;
    report.crowd_expected_return = crowd;
    report.method = JACKPOT_METHOD_ASYMPTOTIC;
  } else if (f.method == "simulate") {
    if (!f.seed) usage("--seed: required with --method simulate");
    const Model model = make_model(m);
    jackpot_simulation sim{};
    check(jackpot_simulate(model.lottery.get(), model.syndicate.get(),
                           model.crowd.get(), f.trials, *f.seed, f.workers,
                           &sim));
    report.jackpot = m.a + (m.s + static_cast<double>(m.c)) * (1.0 - m.x);
    report.expected_gain = sim.mean_syndicate_gain;
    report.expected_win = sim.mean_syndicate_gain + m.s;
    report.has_return = m.s > 0.0;
    report.expected_return = sim.mean_syndicate_return;
    report.has_crowd_return = m.c > 0;
    report.crowd_expected_return = sim.mean_crowd_return;
    report.has_carryover = 1;
    report.carryover_probability = sim.carryover_frequency;
    report.method = JACKPOT_METHOD_SIMULATED;
    out.json = report_json(report, "simulated");
    out.json["std_error"] = num(sim.std_error);
    out.json["n_trials"] = sim.n_trials;
    out.json["seed"] = sim.seed;
    out.csv = report_csv(report, "simulated");
    return out;
  } else {
    usage("--method: expected one of exact, lemma1, asymptotic, simulate, "
          "enumerate");
  }
  static const char* const kNames[] = {"exact", "closed-form", "asymptotic",
                                       "simulated", "enumerated"};
  out.json = report_json(report, kNames[report.method]);
  out.csv = report_csv(report, kNames[report.method]);
  return out;
}

// ---- sweep ----

struct SweepFlags {
  ModelFlags model;
  std::string s_range;
  std::string c_range;
  double step = 1.0;
};

Output run_sweep(SweepFlags f) {
  if (f.s_range.empty() == f.c_range.empty()) {
    usage("--s-range/--c-range: give exactly one");
  }
  const bool over_s = !f.s_range.empty();
  const Range range = over_s ? parse_range(f.s_range, "--s-range", f.step)
                             : parse_range(f.c_range, "--c-range", f.step);
  Output out;
  out.json["variable"] = over_s ? "s" : "c";
  out.json["rows"] = Json::array();
  out.csv = csv_line({"var", "gain", "return"});
  for (double v : range_points(range)) {
    if (over_s) {
      if (v < 0.0) usage("--s-range: stakes must be >= 0");
      f.model.s = v;
    } else {
      if (v < 0.0 || !is_integer(v)) {
        usage("--c-range: crowd sizes must be nonnegative integers");
      }
      f.model.c = static_cast<std::uint64_t>(v);
    }
    const Model model = make_model(f.model);
    jackpot_report r{};
    check(jackpot_expected_win_exact(model.lottery.get(), model.syndicate.get(),
                                     model.crowd.get(), &r));
    Json row;
    row["var"] = num(v);
    row["gain"] = num(r.expected_gain);
    row["return"] = opt_num(r.has_return, r.expected_return);
    out.json["rows"].push_back(row);
    out.csv += csv_line({fmt(v), fmt(r.expected_gain),
                         opt_fmt(r.has_return, r.expected_return)});
  }
  return out;
}

// ---- breakeven ----

Output run_breakeven(std::uint64_t t, std::uint64_t c) {
  jackpot_breakeven_report r{};
  check(jackpot_breakeven(t, c, &r));
  const std::string notes =
      "s_star = (1 + c y) / (2 (1 - y)) with y = (1 - 1/t)^(c + 1); at "
      "t = c = 1000 this is 291.09, while a commonly quoted figure is "
      "290.7981. The minimum gain and the first profitable stake are "
      "unaffected.";
  Output out;
  out.json["y"] = num(r.y);
  out.json["s_star"] = num(r.s_star);
  out.json["g_min"] = num(r.g_min);
  out.json["s_zero"] = num(r.s_zero);
  out.json["first_profitable_integer"] = r.first_profitable_integer;
  out.json["notes"] = notes;
  out.csv = csv_line({"y", "s_star", "g_min", "s_zero",
                      "first_profitable_integer"}) +
            csv_line({fmt(r.y), fmt(r.s_star), fmt(r.g_min), fmt(r.s_zero),
                      std::to_string(r.first_profitable_integer)});
  return out;
}

// ---- table1 ----

Output run_table1(std::uint64_t t, std::uint64_t c, std::uint64_t k_max,
                  const std::string& pmf) {
  if (pmf != "poisson" && pmf != "binomial") {
    usage("--pmf: expected poisson or binomial");
  }
  std::vector<jackpot_table1_row> rows(k_max + 1);
  double sum_full = 0.0;
  double sum_single = 0.0;
  check(jackpot_table1(t, c, k_max,
                       pmf == "poisson" ? JACKPOT_PMF_POISSON
                                        : JACKPOT_PMF_BINOMIAL,
                       rows.data(), &sum_full, &sum_single),
        "--kmax");
  Output out;
  out.json["pmf"] = pmf;
  out.json["rows"] = Json::array();
  out.csv = csv_line({"k", "prob", "payoff_s_t", "contrib_s_t", "payoff_s_1",
                      "contrib_s_1"});
  for (const auto& r : rows) {
    Json row;
    row["k"] = r.k;
    row["prob"] = num(r.probability);
    row["payoff_s_t"] = num(r.payoff_full);
    row["contrib_s_t"] = num(r.contribution_full);
    row["payoff_s_1"] = num(r.payoff_single);
    row["contrib_s_1"] = num(r.contribution_single);
    out.json["rows"].push_back(row);
    out.csv += csv_line({std::to_string(r.k), fmt(r.probability),
                         fmt(r.payoff_full), fmt(r.contribution_full),
                         fmt(r.payoff_single), fmt(r.contribution_single)});
  }
  out.json["sum_contrib_s_t"] = num(sum_full);
  out.json["sum_contrib_s_1"] = num(sum_single);
  return out;
}

// ---- groups ----

Output run_groups(std::uint64_t t, std::uint64_t c, std::uint64_t s,
                  const std::vector<std::uint64_t>& sizes) {
  Output out;
  out.json["rows"] = Json::array();
  out.csv = csv_line({"l", "groups", "adjusted_win", "ratio"});
  for (std::uint64_t l : sizes) {
    if (l == 0 || c % l != 0) usage("--l: each l must divide c");
    double win = 0.0;
    double ratio = 0.0;
    check(jackpot_group_adjusted_win(t, c, s, c / l, l, &win, &ratio), "--l");
    Json row;
    row["l"] = l;
    row["groups"] = c / l;
    row["adjusted_win"] = num(win);
    row["ratio"] = num(ratio);
    out.json["rows"].push_back(row);
    out.csv += csv_line({std::to_string(l), std::to_string(c / l), fmt(win),
                         fmt(ratio)});
  }
  return out;
}

// ---- equilibrium ----

struct EquilibriumFlags {
  std::uint64_t t = 0;
  std::uint64_t c = 2;
  std::uint64_t s = 0;
  bool asymptotic = false;
  std::string p = "uniform";
  double u = 1.0;
  double a_rate = 0.0;
  double x = 0.0;
  std::string side = "crowd";
  double tolerance = 1e-10;
  std::uint64_t max_iterations = 100000;
};

Output run_equilibrium(const EquilibriumFlags& f) {
  const jackpot_optimizer_options opts{f.tolerance, f.max_iterations};
  jackpot_optimizer_result* raw = nullptr;
  jackpot_status status;
  if (f.asymptotic) {
    if (f.side != "crowd" && f.side != "syndicate") {
      usage("--side: expected crowd or syndicate");
    }
    const auto p = parse_vector(f.p, f.t, "--p");
    status = jackpot_asymptotic_best_response(
        p.data(), p.size(), {f.u, f.a_rate, f.x},
        f.side == "crowd" ? JACKPOT_SIDE_CROWD : JACKPOT_SIDE_SYNDICATE, &opts,
        &raw);
  } else {
    status = jackpot_minimize_return_over_crowd(f.t, f.c, f.s == 0 ? f.t : f.s,
                                                &opts, &raw);
  }
  if (raw == nullptr) check(status);
  const OptResult result(raw);
  std::vector<double> argmin(jackpot_optimizer_result_dimension(raw));
  jackpot_optimizer_result_argmin(raw, argmin.data());
  double margin = 0.0;
  const int certified = jackpot_optimizer_result_certificate(raw, &margin);

  Output out;
  out.json["problem"] = f.asymptotic ? "asymptotic_best_response"
                                     : "minimize_return_over_crowd";
  if (f.asymptotic) out.json["side"] = f.side;
  Json arr = Json::array();
  for (double v : argmin) arr.push_back(num(v));
  out.json["argmin"] = arr;
  out.json["objective"] = num(jackpot_optimizer_result_objective(raw));
  out.json["multiplier"] = num(jackpot_optimizer_result_multiplier(raw));
  out.json["residual"] = num(jackpot_optimizer_result_residual(raw));
  out.json["iterations"] = jackpot_optimizer_result_iterations(raw);
  out.json["converged"] = jackpot_optimizer_result_converged(raw) != 0;
  out.json["certificate"] = certified != 0;
  out.json["certificate_margin"] = num(margin);

  out.csv = csv_line({"i", "argmin"});
  for (std::size_t i = 0; i < argmin.size(); ++i) {
    out.csv += csv_line({std::to_string(i), fmt(argmin[i])});
  }
  if (status == JACKPOT_NOT_CONVERGED) {
    // Still print what was found; the caller sees exit code 4.
    std::cout << out.json.dump(2) << "\n";
  }
  check(status);
  return out;
}

// ---- simulate ----

Output run_simulate(const EvaluateFlags& f) {
  const Model model = make_model(f.model);
  jackpot_simulation sim{};
  check(jackpot_simulate(model.lottery.get(), model.syndicate.get(),
                         model.crowd.get(), f.trials, *f.seed, f.workers,
                         &sim),
        "--trials");
  return {simulation_json(sim), simulation_csv(sim)};
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Syndicate versus crowd expectations in jackpot lotteries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jackpot_version()));

  std::string format;
  std::string out_path;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path,
                    "write to FILE plus FILE.manifest.json");
  };

  EvaluateFlags eval;
  auto* evaluate = app.add_subcommand("evaluate", "expected win, gain, return");
  eval.model.add_to(evaluate);
  evaluate->add_option("--method", eval.method,
                       "exact, lemma1, asymptotic, simulate or enumerate");
  evaluate->add_option("--trials", eval.trials, "trials for simulate");
  evaluate->add_option("--seed", eval.seed, "seed for simulate");
  evaluate->add_option("--workers", eval.workers, "threads for simulate");
  add_output(evaluate);

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "gain and return over a grid");
  sweep.model.add_to(sweep_cmd, /*need_s=*/false);
  sweep_cmd->get_option("--c")->required(false);
  sweep_cmd->add_option("--s-range", sweep.s_range, "lo:hi[:step]");
  sweep_cmd->add_option("--c-range", sweep.c_range, "lo:hi[:step]");
  sweep_cmd->add_option("--step", sweep.step, "grid step (default 1)");
  add_output(sweep_cmd);

  std::uint64_t bt = 0;
  std::uint64_t bc = 0;
  auto* be = app.add_subcommand("breakeven", "breakeven stake for e_s bets");
  be->add_option("--t", bt, "number of tickets")->required();
  be->add_option("--c", bc, "crowd size")->required();
  add_output(be);

  std::uint64_t tt = 0;
  std::uint64_t tc = 0;
  std::uint64_t k_max = 4;
  std::string pmf = "poisson";
  auto* t1 = app.add_subcommand("table1", "gain by number of co-winners");
  t1->add_option("--t", tt, "number of tickets")->required();
  t1->add_option("--c", tc, "crowd size")->required();
  t1->add_option("--kmax", k_max, "largest co-winner count");
  t1->add_option("--pmf", pmf, "poisson or binomial");
  add_output(t1);

  std::uint64_t gt = 0;
  std::uint64_t gc = 0;
  std::uint64_t gs = 0;
  std::vector<std::uint64_t> sizes;
  auto* gr = app.add_subcommand("groups", "crowd of small coordinating groups");
  gr->add_option("--t", gt, "number of tickets")->required();
  gr->add_option("--c", gc, "crowd size")->required();
  gr->add_option("--s", gs, "syndicate stake")->required();
  gr->add_option("--l", sizes, "tickets per group (comma list)")
      ->required()
      ->delimiter(',');
  add_output(gr);

  EquilibriumFlags eq;
  auto* eqc = app.add_subcommand("equilibrium", "best responses on the simplex");
  eqc->add_option("--t", eq.t, "number of tickets")->required()
      ->check(CLI::PositiveNumber);
  eqc->add_option("--c", eq.c, "crowd size (finite problem)");
  eqc->add_option("--s", eq.s, "syndicate support size (default t)");
  eqc->add_flag("--asymptotic", eq.asymptotic, "large-pool limit");
  eqc->add_option("--p", eq.p, "drawing probabilities (asymptotic)");
  eqc->add_option("--u", eq.u, "crowd to syndicate ratio (asymptotic)");
  eqc->add_option("--a-rate", eq.a_rate, "carryover per unit stake");
  eqc->add_option("--x", eq.x, "take rate");
  eqc->add_option("--side", eq.side, "crowd or syndicate");
  eqc->add_option("--tolerance", eq.tolerance, "first-order tolerance");
  eqc->add_option("--max-iterations", eq.max_iterations, "iteration cap");
  add_output(eqc);

  EvaluateFlags sim;
  auto* simc = app.add_subcommand("simulate", "Monte Carlo over drawings");
  sim.model.add_to(simc);
  simc->add_option("--trials", sim.trials, "number of drawings");
  simc->add_option("--seed", sim.seed, "64-bit seed (printed if omitted)");
  simc->add_option("--workers", sim.workers, "threads; 0 = all");
  add_output(simc);

  std::string manifest_path;
  auto* rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "manifest file")->required()
      ->check(CLI::ExistingFile);
  rerun->add_option("--out", out_path, "write to FILE plus manifest");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (rerun->parsed()) {
    std::ifstream in(manifest_path);
    Json manifest;
    try {
      manifest = Json::parse(in);
    } catch (const std::exception& e) {
      usage(std::string("--manifest: ") + e.what());
    }
    if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
      usage("--manifest: no argv array");
    }
    std::vector<std::string> again;
    for (const auto& a : manifest["argv"]) again.push_back(a.get<std::string>());
    if (!out_path.empty()) {
      again.push_back("--out");
      again.push_back(out_path);
    }
    return dispatch(again);
  }

  Output result;
  bool csv_default = false;
  std::string command;
  std::vector<std::string> resolved = args;
  Json params;
  if (evaluate->parsed()) {
    command = "evaluate";
    if (eval.method == "simulate" && !eval.seed) {
      eval.seed = fresh_seed();
      std::cerr << "seed: " << *eval.seed << "\n";
      resolved.insert(resolved.begin() + 1,
                      {"--seed", std::to_string(*eval.seed)});
    }
    result = run_evaluate(eval);
    params = model_json(eval.model);
    params["method"] = eval.method;
    if (eval.method == "simulate") {
      params["trials"] = eval.trials;
      params["seed"] = *eval.seed;
    }
  } else if (sweep_cmd->parsed()) {
    command = "sweep";
    csv_default = true;
    result = run_sweep(sweep);
    params = model_json(sweep.model);
    params["s_range"] = sweep.s_range;
    params["c_range"] = sweep.c_range;
    params["step"] = sweep.step;
  } else if (be->parsed()) {
    command = "breakeven";
    result = run_breakeven(bt, bc);
    params = {{"t", bt}, {"c", bc}};
  } else if (t1->parsed()) {
    command = "table1";
    csv_default = true;
    result = run_table1(tt, tc, k_max, pmf);
    params = {{"t", tt}, {"c", tc}, {"kmax", k_max}, {"pmf", pmf}};
  } else if (gr->parsed()) {
    command = "groups";
    result = run_groups(gt, gc, gs, sizes);
    params = {{"t", gt}, {"c", gc}, {"s", gs}, {"l", sizes}};
  } else if (eqc->parsed()) {
    command = "equilibrium";
    result = run_equilibrium(eq);
    params = {{"t", eq.t},           {"c", eq.c},
              {"s", eq.s},           {"asymptotic", eq.asymptotic},
              {"p", eq.p},           {"u", eq.u},
              {"a_rate", eq.a_rate}, {"x", eq.x},
              {"side", eq.side},     {"tolerance", eq.tolerance},
              {"max_iterations", eq.max_iterations}};
  } else if (simc->parsed()) {
    command = "simulate";
    if (!sim.seed) {
      sim.seed = fresh_seed();
      std::cerr << "seed: " << *sim.seed << "\n";
      resolved.insert(resolved.begin() + 1,
                      {"--seed", std::to_string(*sim.seed)});
    }
    result = run_simulate(sim);
    params = model_json(sim.model);
    params["trials"] = sim.trials;
    params["seed"] = *sim.seed;
    params["workers"] = sim.workers;
  }

  const bool as_csv = format.empty() ? csv_default : format == "csv";
  const std::string text = as_csv ? result.csv : result.json.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }

  // The manifest replays the run without --out.
  for (std::size_t i = 0; i + 1 < resolved.size(); ++i) {
    if (resolved[i] == "--out") {
      resolved.erase(resolved.begin() + static_cast<long>(i),
                     resolved.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  std::erase_if(resolved, [](const std::string& a) {
    return a.rfind("--out=", 0) == 0;
  });
  std::ofstream file(out_path, std::ios::binary);
  if (!file) usage("--out: cannot open " + out_path);
  file << text;
  Json manifest;
  manifest["command"] = command;
  manifest["parameters"] = params;
  manifest["format"] = as_csv ? "csv" : "json";
  manifest["seed"] = params.contains("seed") ? params["seed"] : Json(nullptr);
  manifest["version"] = jackpot_version();
  manifest["timestamp"] = timestamp();
  manifest["argv"] = resolved;
  std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
  if (!mf) usage("--out: cannot write manifest");
  mf << manifest.dump(2) << "\n";
  return kExitOk;
}

int run(std::vector<std::string> args) {
  try {
    return dispatch(std::move(args));
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc));
}
