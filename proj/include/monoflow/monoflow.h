/* Copyright 2026 The Monoflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the monoflow solver library.
 *
 * Objects are opaque handles created by *_create / *_load functions and
 * released by the matching *_free function (which accepts NULL). Every
 * fallible call returns a monoflow_status; on failure a description is
 * available from monoflow_last_error() on the same thread until the next
 * failing call. Indices (players, actions, states) are zero-based.
 * Strategy profiles are passed flattened: player 0's probabilities, then
 * player 1's, and so on. */

#ifndef MONOFLOW_MONOFLOW_H_
#define MONOFLOW_MONOFLOW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MONOFLOW_BUILDING_LIBRARY)
#    define MONOFLOW_API __declspec(dllexport)
#  else
#    define MONOFLOW_API __declspec(dllimport)
#  endif
#else
#  define MONOFLOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monoflow_status {
  MONOFLOW_OK = 0,
  MONOFLOW_ERR_INVALID_INPUT = 1,
  MONOFLOW_ERR_DOMAIN = 2,
  MONOFLOW_ERR_DEGENERATE = 3,
  MONOFLOW_ERR_PARSE = 4,
  MONOFLOW_ERR_IO = 5,
  MONOFLOW_ERR_NULL_ARGUMENT = 6,
  MONOFLOW_ERR_INTERNAL = 7
} monoflow_status;

MONOFLOW_API const char* monoflow_status_string(monoflow_status status);
MONOFLOW_API const char* monoflow_last_error(void);
MONOFLOW_API const char* monoflow_version(void);

/* ---- simplex geometry ------------------------------------------------- */

/* Euclidean projection of v (length m) onto the probability simplex. */
MONOFLOW_API monoflow_status monoflow_simplex_project(const double* v, size_t m, double* out);

/* ---- games ------------------------------------------------------------ */

typedef struct monoflow_game monoflow_game;

/* costs holds num_players flat tensors back to back, each row-major over
 * (s_1, ..., s_N) with s_1 slowest. */
MONOFLOW_API monoflow_status monoflow_game_create(int num_players, const int* action_counts,
                                                  const double* costs, monoflow_game** out);
MONOFLOW_API monoflow_status monoflow_game_load(const char* path, monoflow_game** out);
MONOFLOW_API monoflow_status monoflow_game_save(const monoflow_game* game, const char* path);
/* The built-in 2x2 zero-sum game with closed-form circular trajectories. */
MONOFLOW_API monoflow_status monoflow_game_appendix(monoflow_game** out);
MONOFLOW_API void monoflow_game_free(monoflow_game* game);

MONOFLOW_API int monoflow_game_num_players(const monoflow_game* game);
MONOFLOW_API int monoflow_game_num_actions(const monoflow_game* game, int player);
/* Total number of probabilities in a profile for this game. */
MONOFLOW_API size_t monoflow_game_profile_size(const monoflow_game* game);
MONOFLOW_API int monoflow_game_is_zero_sum(const monoflow_game* game);

MONOFLOW_API monoflow_status monoflow_expected_cost(const monoflow_game* game,
                                                    const double* profile, size_t len,
                                                    int player, double* out);
/* out receives num_actions(player) entries. */
MONOFLOW_API monoflow_status monoflow_own_gradient(const monoflow_game* game,
                                                   const double* profile, size_t len,
                                                   int player, double* out);
MONOFLOW_API monoflow_status monoflow_best_response(const monoflow_game* game,
                                                    const double* profile, size_t len,
                                                    int player, double* value, int* action);
MONOFLOW_API monoflow_status monoflow_nash_gap(const monoflow_game* game, const double* profile,
                                               size_t len, double* out);
MONOFLOW_API monoflow_status monoflow_lipschitz_bound(const monoflow_game* game, double* out);

/* ---- monotonicity ----------------------------------------------------- */

typedef enum monoflow_verdict {
  MONOFLOW_CERTIFIED_EXHAUSTIVE = 0,
  MONOFLOW_CERTIFIED_SAMPLED = 1,
  MONOFLOW_VIOLATED = 2
} monoflow_verdict;

typedef struct monoflow_monotonicity_report {
  monoflow_verdict verdict;
  double worst_margin;
  uint64_t pairs_tested;
  uint64_t seed;
} monoflow_monotonicity_report;

/* witness_s / witness_t may be NULL; otherwise they receive num_players
 * action indices of the worst pair. */
MONOFLOW_API monoflow_status monoflow_check_pure_monotone(const monoflow_game* game, uint64_t cap,
                                                          double tol, uint64_t seed,
                                                          monoflow_monotonicity_report* report,
                                                          int* witness_s, int* witness_t);
MONOFLOW_API monoflow_status monoflow_check_variational_monotone(
    const monoflow_game* game, uint64_t n_samples, double tol, uint64_t seed,
    monoflow_monotonicity_report* report);

/* ---- flows ------------------------------------------------------------ */

typedef enum monoflow_scheme {
  MONOFLOW_PROJECTED_EULER = 0,
  MONOFLOW_PROXIMAL_IMPLICIT = 1,
  MONOFLOW_INTERIOR_RK4 = 2
} monoflow_scheme;

typedef enum monoflow_stop_reason {
  MONOFLOW_STOP_GAP_TOL_MET = 0,
  MONOFLOW_STOP_T_MAX_REACHED = 1
} monoflow_stop_reason;

typedef struct monoflow_flow_config {
  monoflow_scheme scheme;
  double step_size;
  double t_max;
  double gap_tol;
  int record_every;
  double inner_tol;
  int inner_max;
} monoflow_flow_config;

MONOFLOW_API void monoflow_flow_config_init(monoflow_flow_config* cfg);

typedef struct monoflow_flow_result monoflow_flow_result;

/* x0 may be NULL for the uniform profile. */
MONOFLOW_API monoflow_status monoflow_integrate(const monoflow_game* game, const double* x0,
                                                size_t len, const monoflow_flow_config* cfg,
                                                monoflow_flow_result** out);
MONOFLOW_API void monoflow_flow_result_free(monoflow_flow_result* result);

MONOFLOW_API size_t monoflow_flow_result_num_records(const monoflow_flow_result* result);
/* Length of one flattened state or Cesàro profile. */
MONOFLOW_API size_t monoflow_flow_result_profile_size(const monoflow_flow_result* result);
MONOFLOW_API monoflow_stop_reason monoflow_flow_result_stop_reason(
    const monoflow_flow_result* result);
MONOFLOW_API monoflow_status monoflow_flow_result_record(const monoflow_flow_result* result,
                                                         size_t index, double* time, double* gap,
                                                         double* state, double* cesaro);

/* ---- mean field ------------------------------------------------------- */

typedef enum monoflow_congestion {
  MONOFLOW_CONGESTION_NONE = 0,
  MONOFLOW_CONGESTION_IDENTITY = 1,
  MONOFLOW_CONGESTION_POWER = 2,
  MONOFLOW_CONGESTION_LOG1P = 3
} monoflow_congestion;

typedef struct monoflow_mf_cost monoflow_mf_cost;

/* kernel (m*m, row-major) may be NULL for no interaction term. exponent is
 * used by MONOFLOW_CONGESTION_POWER only. */
MONOFLOW_API monoflow_status monoflow_mf_cost_create(int states, const double* phi,
                                                     const double* kernel,
                                                     monoflow_congestion congestion,
                                                     double exponent,
                                                     int monotone_by_construction,
                                                     monoflow_mf_cost** out);
MONOFLOW_API monoflow_status monoflow_mf_cost_load(const char* path, monoflow_mf_cost** out);
MONOFLOW_API void monoflow_mf_cost_free(monoflow_mf_cost* cost);
MONOFLOW_API int monoflow_mf_cost_states(const monoflow_mf_cost* cost);

MONOFLOW_API monoflow_status monoflow_mf_cost_vector(const monoflow_mf_cost* cost,
                                                     const double* mu, size_t len, double* out);
MONOFLOW_API monoflow_status monoflow_mf_exploitability(const monoflow_mf_cost* cost,
                                                        const double* mu, size_t len,
                                                        double* out);
MONOFLOW_API monoflow_status monoflow_mf_integrate(const monoflow_mf_cost* cost,
                                                   const double* mu0, size_t len,
                                                   const monoflow_flow_config* cfg,
                                                   monoflow_flow_result** out);
MONOFLOW_API monoflow_status monoflow_check_mf_monotone(const monoflow_mf_cost* cost,
                                                        uint64_t n_samples, double tol,
                                                        uint64_t seed,
                                                        monoflow_monotonicity_report* report);

/* ---- closed-form oracle ----------------------------------------------- */

/* Both write two reduced coordinates (v1, v2). */
MONOFLOW_API monoflow_status monoflow_analytic_solution(double v1, double v2, double t,
                                                        double* out);
MONOFLOW_API monoflow_status monoflow_analytic_cesaro(double v1, double v2, double t,
                                                      double* out);

/* ---- runs ------------------------------------------------------------- */

typedef enum monoflow_run_mode {
  MONOFLOW_MODE_NPLAYER = 0,
  MONOFLOW_MODE_MEANFIELD = 1,
  MONOFLOW_MODE_SYMMETRIC = 2,
  MONOFLOW_MODE_APPENDIX_B = 3,
  MONOFLOW_MODE_GAUSSIAN_CHECK = 4
} monoflow_run_mode;

typedef struct monoflow_run_spec {
  monoflow_run_mode mode;
  const char* input_path;  /* required for nplayer, meanfield, symmetric */
  const char* output_dir;  /* NULL: $MONOFLOW_OUTPUT_ROOT/<mode>-seed<seed> */
  monoflow_flow_config flow;
  int step_size_given;     /* 0: derive the step size from the input */
  int force;
  uint64_t seed;
  int check_monotone;
  const double* initial;   /* flattened initial state, or NULL */
  size_t initial_len;
  size_t gaussian_samples;
  int gaussian_dim;
  int gaussian_pairs;
} monoflow_run_spec;

MONOFLOW_API void monoflow_run_spec_init(monoflow_run_spec* spec);

/* Parses a mode or scheme name; returns MONOFLOW_ERR_INVALID_INPUT if unknown. */
MONOFLOW_API monoflow_status monoflow_parse_run_mode(const char* name, monoflow_run_mode* out);
MONOFLOW_API monoflow_status monoflow_parse_scheme(const char* name, monoflow_scheme* out);

/* Executes a run. *exit_code receives 0 (converged or check passed), 2 (t_max
 * reached without meeting gap_tol) or 1 (input error; no files written). The
 * message buffer, if given, receives a NUL-terminated summary (truncated to
 * message_size). Returns MONOFLOW_OK whenever the run was attempted. */
MONOFLOW_API monoflow_status monoflow_run(const monoflow_run_spec* spec, int* exit_code,
                                          char* message, size_t message_size,
                                          char* output_dir, size_t output_dir_size);

#ifdef __cplusplus
}
#endif

#endif /* MONOFLOW_MONOFLOW_H_ */
