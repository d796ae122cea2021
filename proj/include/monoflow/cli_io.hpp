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

#ifndef MONOFLOW_CLI_IO_HPP_
#define MONOFLOW_CLI_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoflow/flow_engine.hpp"
#include "monoflow/game_core.hpp"
#include "monoflow/meanfield.hpp"

namespace monoflow::io {

// Game files are JSON objects:
//   {"players": 2, "actions": [2, 2], "costs": [[...], [...]],
//    "zero_sum_expected": true}
// Each cost array is flat and row-major over (s_1, ..., s_N), s_1 slowest.
// zero_sum_expected is optional and is checked against the costs.
TensorGame ParseGame(std::string_view text);
TensorGame LoadGame(const std::string& path);
std::string SerializeGame(const TensorGame& game);
void SaveGame(const TensorGame& game, const std::string& path);

// Mean-field files mirror the game format:
//   {"states": 3, "phi": [...], "kernel": [... m*m row-major ...],
//    "psi": {"name": "power", "p": 2}, "monotone_by_construction": true}
// kernel, psi (a name or an object) and monotone_by_construction are optional.
MeanFieldCost ParseMeanField(std::string_view text);
MeanFieldCost LoadMeanField(const std::string& path);
std::string SerializeMeanField(const MeanFieldCost& cost);

// 17 significant digits, '.' separator, independent of the C locale.
std::string FormatNumber(double v);

enum class RunMode { kNPlayer, kMeanField, kSymmetric, kAppendixB, kGaussianCheck };

std::string_view RunModeName(RunMode m);
RunMode ParseRunMode(std::string_view name);

// Environment variable naming the directory under which runs without an
// explicit output directory are created.
inline constexpr const char* kOutputRootEnv = "MONOFLOW_OUTPUT_ROOT";

struct RunSpec {
  RunMode mode = RunMode::kNPlayer;
  std::string input_path;
  FlowConfig flow;
  // Unset: DefaultStepSize(LipschitzBound(game)) for game modes, 1e-2 otherwise.
  std::optional<double> step_size;
  std::string output_dir;
  bool force = false;
  std::uint64_t seed = 1;
  bool check_monotone = true;
  // Flattened initial state; empty selects the default (uniform, or the
  // reduced point (0.8, 2/3) for appendix-b, where two values are expected).
  std::vector<double> initial;
  // gaussian-check only.
  std::size_t gaussian_samples = 1'000'000;
  int gaussian_dim = 4;
  int gaussian_pairs = 20;
};

struct RunOutcome {
  int exit_status = 1;  // 0 converged/passed, 2 t_max without convergence, 1 input error
  std::string output_dir;
  std::string message;
};

// Validates everything before touching the file system; input errors leave no
// numeric output behind.
RunOutcome Run(const RunSpec& spec);

}  // namespace monoflow::io

#endif  // MONOFLOW_CLI_IO_HPP_
