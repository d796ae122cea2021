// Copyright 2026 The Monoflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "monoflow/monoflow.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "monoflow/analytic_oracle.hpp"
#include "monoflow/cli_io.hpp"
#include "monoflow/error.hpp"
#include "monoflow/flow_engine.hpp"
#include "monoflow/game_core.hpp"
#include "monoflow/meanfield.hpp"
#include "monoflow/monotonicity.hpp"

struct monoflow_game {
  monoflow::TensorGame game;
};

struct monoflow_mf_cost {
  monoflow::MeanFieldCost cost;
};

struct monoflow_flow_result {
  monoflow::FlowResult result;
  std::size_t profile_size;
};

namespace {

using namespace monoflow;

thread_local std::string g_last_error;

monoflow_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return MONOFLOW_ERR_INVALID_INPUT;
    case ErrorCode::kDomain:
      return MONOFLOW_ERR_DOMAIN;
    case ErrorCode::kDegenerate:
      return MONOFLOW_ERR_DEGENERATE;
    case ErrorCode::kParse:
      return MONOFLOW_ERR_PARSE;
    case ErrorCode::kIo:
      return MONOFLOW_ERR_IO;
  }
  return MONOFLOW_ERR_INTERNAL;
}

// Runs body, converting exceptions into status codes.
template <typename Body>
monoflow_status Guard(Body&& body) {
  try {
    body();
    return MONOFLOW_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MONOFLOW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MONOFLOW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MONOFLOW_ERR_INTERNAL;
  }
}

monoflow_status NullArgument(const char* name) {
  g_last_error = std::string("argument '") + name + "' is null";
  return MONOFLOW_ERR_NULL_ARGUMENT;
}

#define MONOFLOW_REQUIRE_ARG(arg) \
  do {                            \
    if ((arg) == nullptr) return NullArgument(#arg); \
  } while (0)

StrategyProfile ProfileFromFlat(const TensorGame& game, const double* data, std::size_t len) {
  std::size_t total = 0;
  for (int m : game.action_counts()) total += static_cast<std::size_t>(m);
  Require(len == total, "profile has " + std::to_string(len) + " entries, game needs " +
                            std::to_string(total));
  StrategyProfile x;
  std::size_t at = 0;
  for (int m : game.action_counts()) {
    x.emplace_back(std::vector<double>(data + at, data + at + m));
    at += static_cast<std::size_t>(m);
  }
  return x;
}

void FlattenInto(const StrategyProfile& x, double* out) {
  for (const auto& s : x)
    for (double p : s.probs()) *out++ = p;
}

FlowConfig ToConfig(const monoflow_flow_config& c) {
  FlowConfig cfg;
  switch (c.scheme) {
    case MONOFLOW_PROJECTED_EULER:
      cfg.scheme = Scheme::kProjectedEuler;
      break;
    case MONOFLOW_PROXIMAL_IMPLICIT:
      cfg.scheme = Scheme::kProximalImplicit;
      break;
    case MONOFLOW_INTERIOR_RK4:
      cfg.scheme = Scheme::kInteriorRk4;
      break;
    default:
      Fail(ErrorCode::kInvalidInput, "unknown scheme value");
  }
  cfg.step_size = c.step_size;
  cfg.t_max = c.t_max;
  cfg.gap_tol = c.gap_tol;
  cfg.record_every = c.record_every;
  cfg.inner_tol = c.inner_tol;
  cfg.inner_max = c.inner_max;
  cfg.Validate();
  return cfg;
}

void FillReport(const MonotonicityReport& r, monoflow_monotonicity_report* out) {
  switch (r.verdict) {
    case Verdict::kCertifiedExhaustive:
      out->verdict = MONOFLOW_CERTIFIED_EXHAUSTIVE;
      break;
    case Verdict::kCertifiedSampled:
      out->verdict = MONOFLOW_CERTIFIED_SAMPLED;
      break;
    case Verdict::kViolated:
      out->verdict = MONOFLOW_VIOLATED;
      break;
  }
  out->worst_margin = r.worst_margin;
  out->pairs_tested = r.pairs_tested;
  out->seed = r.seed;
}

void CopyString(const std::string& s, char* buf, std::size_t size) {
  if (buf == nullptr || size == 0) return;
  const std::size_t n = std::min(s.size(), size - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

monoflow_flow_result* WrapResult(FlowResult r) {
  const std::size_t size = [&] {
    std::size_t total = 0;
    for (const auto& s : r.states.front()) total += static_cast<std::size_t>(s.size());
    return total;
  }();
  return new monoflow_flow_result{std::move(r), size};
}

}  // namespace

extern "C" {

const char* monoflow_status_string(monoflow_status status) {
  switch (status) {
    case MONOFLOW_OK:
      return "ok";
    case MONOFLOW_ERR_INVALID_INPUT:
      return "invalid input";
    case MONOFLOW_ERR_DOMAIN:
      return "domain error";
    case MONOFLOW_ERR_DEGENERATE:
      return "degenerate input";
    case MONOFLOW_ERR_PARSE:
      return "parse error";
    case MONOFLOW_ERR_IO:
      return "i/o error";
    case MONOFLOW_ERR_NULL_ARGUMENT:
      return "null argument";
    case MONOFLOW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* monoflow_last_error(void) { return g_last_error.c_str(); }

const char* monoflow_version(void) { return MONOFLOW_VERSION_STRING; }

monoflow_status monoflow_simplex_project(const double* v, size_t m, double* out) {
  MONOFLOW_REQUIRE_ARG(v);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    const MixedStrategy p = SimplexProject(std::span<const double>(v, m));
    std::copy(p.probs().begin(), p.probs().end(), out);
  });
}

monoflow_status monoflow_game_create(int num_players, const int* action_counts,
                                     const double* costs, monoflow_game** out) {
  MONOFLOW_REQUIRE_ARG(action_counts);
  MONOFLOW_REQUIRE_ARG(costs);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] {
    Require(num_players >= 1, "a game needs at least one player");
    std::vector<int> actions(action_counts, action_counts + num_players);
    std::size_t joint = 1;
    for (int m : actions) {
      Require(m >= 1, "every player needs at least one action");
      joint *= static_cast<std::size_t>(m);
    }
    std::vector<std::vector<double>> tensors;
    for (int j = 0; j < num_players; ++j)
      tensors.emplace_back(costs + static_cast<std::size_t>(j) * joint,
                           costs + static_cast<std::size_t>(j + 1) * joint);
    *out = new monoflow_game{TensorGame(std::move(actions), std::move(tensors))};
  });
}

monoflow_status monoflow_game_load(const char* path, monoflow_game** out) {
  MONOFLOW_REQUIRE_ARG(path);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] { *out = new monoflow_game{io::LoadGame(path)}; });
}

monoflow_status monoflow_game_save(const monoflow_game* game, const char* path) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(path);
  return Guard([&] { io::SaveGame(game->game, path); });
}

monoflow_status monoflow_game_appendix(monoflow_game** out) {
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] { *out = new monoflow_game{oracle::AppendixGame()}; });
}

void monoflow_game_free(monoflow_game* game) { delete game; }

int monoflow_game_num_players(const monoflow_game* game) {
  return game ? game->game.num_players() : 0;
}

int monoflow_game_num_actions(const monoflow_game* game, int player) {
  if (!game || player < 0 || player >= game->game.num_players()) return 0;
  return game->game.actions(player);
}

size_t monoflow_game_profile_size(const monoflow_game* game) {
  if (!game) return 0;
  std::size_t total = 0;
  for (int m : game->game.action_counts()) total += static_cast<std::size_t>(m);
  return total;
}

int monoflow_game_is_zero_sum(const monoflow_game* game) {
  return game && game->game.zero_sum() ? 1 : 0;
}

monoflow_status monoflow_expected_cost(const monoflow_game* game, const double* profile,
                                       size_t len, int player, double* out) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(profile);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    *out = ExpectedCost(game->game, ProfileFromFlat(game->game, profile, len), player);
  });
}

monoflow_status monoflow_own_gradient(const monoflow_game* game, const double* profile,
                                      size_t len, int player, double* out) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(profile);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    const auto g = OwnGradient(game->game, ProfileFromFlat(game->game, profile, len), player);
    std::copy(g.begin(), g.end(), out);
  });
}

monoflow_status monoflow_best_response(const monoflow_game* game, const double* profile,
                                       size_t len, int player, double* value, int* action) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(profile);
  MONOFLOW_REQUIRE_ARG(value);
  MONOFLOW_REQUIRE_ARG(action);
  return Guard([&] {
    const auto br =
        ComputeBestResponse(game->game, ProfileFromFlat(game->game, profile, len), player);
    *value = br.value;
    *action = br.action;
  });
}

monoflow_status monoflow_nash_gap(const monoflow_game* game, const double* profile, size_t len,
                                  double* out) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(profile);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] { *out = NashGap(game->game, ProfileFromFlat(game->game, profile, len)); });
}

monoflow_status monoflow_lipschitz_bound(const monoflow_game* game, double* out) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] { *out = LipschitzBound(game->game); });
}

monoflow_status monoflow_check_pure_monotone(const monoflow_game* game, uint64_t cap, double tol,
                                             uint64_t seed, monoflow_monotonicity_report* report,
                                             int* witness_s, int* witness_t) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(report);
  return Guard([&] {
    const auto r = PureMonotonicityCheck(game->game, cap, tol, seed);
    FillReport(r, report);
    if (witness_s) std::copy(r.witness_s.begin(), r.witness_s.end(), witness_s);
    if (witness_t) std::copy(r.witness_t.begin(), r.witness_t.end(), witness_t);
  });
}

monoflow_status monoflow_check_variational_monotone(const monoflow_game* game, uint64_t n_samples,
                                                    double tol, uint64_t seed,
                                                    monoflow_monotonicity_report* report) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(report);
  return Guard([&] {
    FillReport(VariationalMonotonicityCheck(game->game, n_samples, tol, seed), report);
  });
}

void monoflow_flow_config_init(monoflow_flow_config* cfg) {
  if (!cfg) return;
  const FlowConfig d;
  cfg->scheme = MONOFLOW_PROJECTED_EULER;
  cfg->step_size = d.step_size;
  cfg->t_max = d.t_max;
  cfg->gap_tol = d.gap_tol;
  cfg->record_every = d.record_every;
  cfg->inner_tol = d.inner_tol;
  cfg->inner_max = d.inner_max;
}

monoflow_status monoflow_integrate(const monoflow_game* game, const double* x0, size_t len,
                                   const monoflow_flow_config* cfg, monoflow_flow_result** out) {
  MONOFLOW_REQUIRE_ARG(game);
  MONOFLOW_REQUIRE_ARG(cfg);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] {
    const StrategyProfile start =
        x0 ? ProfileFromFlat(game->game, x0, len) : UniformProfile(game->game);
    *out = WrapResult(Integrate(game->game, start, ToConfig(*cfg)));
  });
}

void monoflow_flow_result_free(monoflow_flow_result* result) { delete result; }

size_t monoflow_flow_result_num_records(const monoflow_flow_result* result) {
  return result ? result->result.times.size() : 0;
}

size_t monoflow_flow_result_profile_size(const monoflow_flow_result* result) {
  return result ? result->profile_size : 0;
}

monoflow_stop_reason monoflow_flow_result_stop_reason(const monoflow_flow_result* result) {
  return result && result->result.stop_reason == StopReason::kGapTolMet
             ? MONOFLOW_STOP_GAP_TOL_MET
             : MONOFLOW_STOP_T_MAX_REACHED;
}

monoflow_status monoflow_flow_result_record(const monoflow_flow_result* result, size_t index,
                                            double* time, double* gap, double* state,
                                            double* cesaro) {
  MONOFLOW_REQUIRE_ARG(result);
  return Guard([&] {
    const auto& r = result->result;
    Require(index < r.times.size(), "record index out of range");
    if (time) *time = r.times[index];
    if (gap) *gap = r.gaps[index];
    if (state) FlattenInto(r.states[index], state);
    if (cesaro) FlattenInto(r.cesaro[index], cesaro);
  });
}

monoflow_status monoflow_mf_cost_create(int states, const double* phi, const double* kernel,
                                        monoflow_congestion congestion, double exponent,
                                        int monotone_by_construction, monoflow_mf_cost** out) {
  MONOFLOW_REQUIRE_ARG(phi);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] {
    Require(states >= 1, "a mean-field cost needs at least one state");
    const auto m = static_cast<std::size_t>(states);
    Congestion psi;
    switch (congestion) {
      case MONOFLOW_CONGESTION_NONE:
        psi = Congestion::None();
        break;
      case MONOFLOW_CONGESTION_IDENTITY:
        psi = Congestion::Identity();
        break;
      case MONOFLOW_CONGESTION_POWER:
        psi = Congestion::Power(exponent);
        break;
      case MONOFLOW_CONGESTION_LOG1P:
        psi = Congestion::Log1p();
        break;
      default:
        Fail(ErrorCode::kInvalidInput, "unknown congestion value");
    }
    std::vector<double> k;
    if (kernel) k.assign(kernel, kernel + m * m);
    *out = new monoflow_mf_cost{
        MeanFieldCost(std::vector<double>(phi, phi + m), std::move(k), psi,
                      monotone_by_construction != 0)};
  });
}

monoflow_status monoflow_mf_cost_load(const char* path, monoflow_mf_cost** out) {
  MONOFLOW_REQUIRE_ARG(path);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] { *out = new monoflow_mf_cost{io::LoadMeanField(path)}; });
}

void monoflow_mf_cost_free(monoflow_mf_cost* cost) { delete cost; }

int monoflow_mf_cost_states(const monoflow_mf_cost* cost) { return cost ? cost->cost.states() : 0; }

monoflow_status monoflow_mf_cost_vector(const monoflow_mf_cost* cost, const double* mu, size_t len,
                                        double* out) {
  MONOFLOW_REQUIRE_ARG(cost);
  MONOFLOW_REQUIRE_ARG(mu);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    const auto g = MeanFieldCostVector(cost->cost, MixedStrategy(std::vector<double>(mu, mu + len)));
    std::copy(g.begin(), g.end(), out);
  });
}

monoflow_status monoflow_mf_exploitability(const monoflow_mf_cost* cost, const double* mu,
                                           size_t len, double* out) {
  MONOFLOW_REQUIRE_ARG(cost);
  MONOFLOW_REQUIRE_ARG(mu);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    *out = MeanFieldExploitability(cost->cost, MixedStrategy(std::vector<double>(mu, mu + len)));
  });
}

monoflow_status monoflow_mf_integrate(const monoflow_mf_cost* cost, const double* mu0, size_t len,
                                      const monoflow_flow_config* cfg, monoflow_flow_result** out) {
  MONOFLOW_REQUIRE_ARG(cost);
  MONOFLOW_REQUIRE_ARG(cfg);
  MONOFLOW_REQUIRE_ARG(out);
  *out = nullptr;
  return Guard([&] {
    const MixedStrategy start = mu0 ? MixedStrategy(std::vector<double>(mu0, mu0 + len))
                                    : MixedStrategy::Uniform(cost->cost.states());
    *out = WrapResult(MeanFieldIntegrate(cost->cost, start, ToConfig(*cfg)));
  });
}

monoflow_status monoflow_check_mf_monotone(const monoflow_mf_cost* cost, uint64_t n_samples,
                                           double tol, uint64_t seed,
                                           monoflow_monotonicity_report* report) {
  MONOFLOW_REQUIRE_ARG(cost);
  MONOFLOW_REQUIRE_ARG(report);
  return Guard([&] {
    FillReport(MeanFieldMonotonicityCheck(cost->cost, n_samples, tol, seed), report);
  });
}

monoflow_status monoflow_analytic_solution(double v1, double v2, double t, double* out) {
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    const auto v = oracle::AnalyticSolution({v1, v2}, t);
    out[0] = v.v1;
    out[1] = v.v2;
  });
}

monoflow_status monoflow_analytic_cesaro(double v1, double v2, double t, double* out) {
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] {
    const auto v = oracle::AnalyticCesaro({v1, v2}, t);
    out[0] = v.v1;
    out[1] = v.v2;
  });
}

void monoflow_run_spec_init(monoflow_run_spec* spec) {
  if (!spec) return;
  const io::RunSpec d;
  std::memset(spec, 0, sizeof(*spec));
  spec->mode = MONOFLOW_MODE_NPLAYER;
  monoflow_flow_config_init(&spec->flow);
  spec->seed = d.seed;
  spec->check_monotone = d.check_monotone ? 1 : 0;
  spec->gaussian_samples = d.gaussian_samples;
  spec->gaussian_dim = d.gaussian_dim;
  spec->gaussian_pairs = d.gaussian_pairs;
}

monoflow_status monoflow_parse_run_mode(const char* name, monoflow_run_mode* out) {
  MONOFLOW_REQUIRE_ARG(name);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] { *out = static_cast<monoflow_run_mode>(io::ParseRunMode(name)); });
}

monoflow_status monoflow_parse_scheme(const char* name, monoflow_scheme* out) {
  MONOFLOW_REQUIRE_ARG(name);
  MONOFLOW_REQUIRE_ARG(out);
  return Guard([&] { *out = static_cast<monoflow_scheme>(ParseScheme(name)); });
}

monoflow_status monoflow_run(const monoflow_run_spec* spec, int* exit_code, char* message,
                             size_t message_size, char* output_dir, size_t output_dir_size) {
  MONOFLOW_REQUIRE_ARG(spec);
  MONOFLOW_REQUIRE_ARG(exit_code);
  *exit_code = 1;
  return Guard([&] {
    io::RunSpec s;
    switch (spec->mode) {
      case MONOFLOW_MODE_NPLAYER:
      case MONOFLOW_MODE_MEANFIELD:
      case MONOFLOW_MODE_SYMMETRIC:
      case MONOFLOW_MODE_APPENDIX_B:
      case MONOFLOW_MODE_GAUSSIAN_CHECK:
        s.mode = static_cast<io::RunMode>(spec->mode);
        break;
      default:
        Fail(ErrorCode::kInvalidInput, "unknown run mode value");
    }
    if (spec->input_path) s.input_path = spec->input_path;
    if (spec->output_dir) s.output_dir = spec->output_dir;
    FlowConfig cfg;
    cfg.scheme = static_cast<Scheme>(spec->flow.scheme);
    cfg.t_max = spec->flow.t_max;
    cfg.gap_tol = spec->flow.gap_tol;
    cfg.record_every = spec->flow.record_every;
    cfg.inner_tol = spec->flow.inner_tol;
    cfg.inner_max = spec->flow.inner_max;
    Require(spec->flow.scheme >= MONOFLOW_PROJECTED_EULER &&
                spec->flow.scheme <= MONOFLOW_INTERIOR_RK4,
            "unknown scheme value");
    s.flow = cfg;
    if (spec->step_size_given) s.step_size = spec->flow.step_size;
    s.force = spec->force != 0;
    s.seed = spec->seed;
    s.check_monotone = spec->check_monotone != 0;
    if (spec->initial && spec->initial_len > 0)
      s.initial.assign(spec->initial, spec->initial + spec->initial_len);
    s.gaussian_samples = spec->gaussian_samples;
    s.gaussian_dim = spec->gaussian_dim;
    s.gaussian_pairs = spec->gaussian_pairs;

    const io::RunOutcome outcome = io::Run(s);
    *exit_code = outcome.exit_status;
    CopyString(outcome.message, message, message_size);
    CopyString(outcome.output_dir, output_dir, output_dir_size);
  });
}

}  // extern "C"
