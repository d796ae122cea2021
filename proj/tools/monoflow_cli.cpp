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

// Command-line front end. Talks to the solver only through the C API.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monoflow/monoflow.h"

namespace {

struct RunOptions {
  std::string mode = "nplayer";
  std::string input;
  std::string scheme = "projected-euler";
  std::optional<double> h;
  double t_max = 10.0;
  double gap_tol = 0.0;
  int record_every = 1;
  double inner_tol = 1e-12;
  int inner_max = 1000;
  std::string out;
  bool force = false;
  std::uint64_t seed = 1;
  bool no_monotone_check = false;
  std::vector<double> x0;
  std::size_t samples = 1'000'000;
  int dim = 4;
  int pairs = 20;
};

int Report(monoflow_status status) {
  std::cerr << "error: " << monoflow_status_string(status) << ": " << monoflow_last_error()
            << "\n";
  return 1;
}

int DoRun(const RunOptions& o) {
  monoflow_run_spec spec;
  monoflow_run_spec_init(&spec);
  if (auto s = monoflow_parse_run_mode(o.mode.c_str(), &spec.mode); s != MONOFLOW_OK)
    return Report(s);
  if (auto s = monoflow_parse_scheme(o.scheme.c_str(), &spec.flow.scheme); s != MONOFLOW_OK)
    return Report(s);
  spec.input_path = o.input.empty() ? nullptr : o.input.c_str();
  spec.output_dir = o.out.empty() ? nullptr : o.out.c_str();
  if (o.h) {
    spec.flow.step_size = *o.h;
    spec.step_size_given = 1;
  }
  spec.flow.t_max = o.t_max;
  spec.flow.gap_tol = o.gap_tol;
  spec.flow.record_every = o.record_every;
  spec.flow.inner_tol = o.inner_tol;
  spec.flow.inner_max = o.inner_max;
  spec.force = o.force ? 1 : 0;
  spec.seed = o.seed;
  spec.check_monotone = o.no_monotone_check ? 0 : 1;
  spec.initial = o.x0.empty() ? nullptr : o.x0.data();
  spec.initial_len = o.x0.size();
  spec.gaussian_samples = o.samples;
  spec.gaussian_dim = o.dim;
  spec.gaussian_pairs = o.pairs;

  int exit_code = 1;
  char message[4096];
  char dir[4096];
  if (auto s = monoflow_run(&spec, &exit_code, message, sizeof(message), dir, sizeof(dir));
      s != MONOFLOW_OK)
    return Report(s);
  if (exit_code == 1) {
    std::cerr << "error: " << message << "\n";
  } else {
    std::cout << message << "\n" << "output: " << dir << "\n";
  }
  return exit_code;
}

int DoCheck(const std::string& path, std::uint64_t samples, std::uint64_t seed) {
  monoflow_game* game = nullptr;
  if (auto s = monoflow_game_load(path.c_str(), &game); s != MONOFLOW_OK) return Report(s);
  const int n = monoflow_game_num_players(game);
  const bool zero_sum = monoflow_game_is_zero_sum(game) != 0;
  std::vector<int> ws(n), wt(n);
  monoflow_monotonicity_report pure{}, var{};
  monoflow_status s = monoflow_check_pure_monotone(game, 1'000'000, 1e-9, seed, &pure, ws.data(),
                                                   wt.data());
  if (s == MONOFLOW_OK) s = monoflow_check_variational_monotone(game, samples, 1e-9, seed, &var);
  monoflow_game_free(game);
  if (s != MONOFLOW_OK) return Report(s);

  static const char* kNames[] = {"certified-exhaustive", "certified-sampled", "violated"};
  std::cout << "zero_sum: " << (zero_sum ? "true" : "false") << "\n";
  std::cout << "pure: " << kNames[pure.verdict] << " worst_margin " << pure.worst_margin
            << " pairs " << pure.pairs_tested << "\n";
  if (pure.verdict == MONOFLOW_VIOLATED) {
    std::cout << "witness:";
    for (int a : ws) std::cout << ' ' << a + 1;
    std::cout << " /";
    for (int a : wt) std::cout << ' ' << a + 1;
    std::cout << "\n";
  }
  std::cout << "variational: " << kNames[var.verdict] << " worst_margin " << var.worst_margin
            << " pairs " << var.pairs_tested << "\n";
  return pure.verdict == MONOFLOW_VIOLATED || var.verdict == MONOFLOW_VIOLATED ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone game and mean-field equilibrium solver"};
  app.set_version_flag("--version", std::string(monoflow_version()));
  app.require_subcommand(1);
  // --h is the step size, so help is long-form only.
  app.set_help_flag("--help", "print this help message and exit");

  RunOptions o;
  auto* run = app.add_subcommand("run", "integrate a flow and write trajectory, gaps and report");
  run->add_option("--mode", o.mode, "nplayer, meanfield, symmetric, appendix-b, gaussian-check")
      ->capture_default_str();
  run->add_option("--input", o.input, "game or mean-field file");
  run->add_option("--scheme", o.scheme, "projected-euler, proximal-implicit, interior-rk4")
      ->capture_default_str();
  run->add_option("--h", o.h, "step size (default derived from the input)");
  run->add_option("--t-max", o.t_max)->capture_default_str();
  run->add_option("--gap-tol", o.gap_tol)->capture_default_str();
  run->add_option("--record-every", o.record_every)->capture_default_str();
  run->add_option("--inner-tol", o.inner_tol)->capture_default_str();
  run->add_option("--inner-max", o.inner_max)->capture_default_str();
  run->add_option("--out", o.out, "output directory");
  run->add_flag("--force", o.force, "reuse a non-empty output directory");
  run->add_option("--seed", o.seed)->capture_default_str();
  run->add_flag("--no-monotone-check", o.no_monotone_check);
  run->add_option("--x0", o.x0, "initial state, flattened, comma separated")->delimiter(',');
  run->add_option("--samples", o.samples, "gaussian-check sample count")->capture_default_str();
  run->add_option("--dim", o.dim, "gaussian-check dimension")->capture_default_str();
  run->add_option("--pairs", o.pairs, "gaussian-check coefficient pairs")->capture_default_str();

  std::string check_path;
  std::uint64_t check_samples = 10'000;
  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "monotonicity checks for a game file");
  check->add_option("game", check_path)->required();
  check->add_option("--samples", check_samples)->capture_default_str();
  check->add_option("--seed", check_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (*run) return DoRun(o);
  return DoCheck(check_path, check_samples, check_seed);
}
