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

#ifndef MONOFLOW_FLOW_ENGINE_HPP_
#define MONOFLOW_FLOW_ENGINE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "monoflow/game_core.hpp"

namespace monoflow {

// The flow u' + G(u) + N(u) ∋ 0 on a product of simplices, where G stacks
// one cost-gradient block per population and N is the normal cone of the
// product. Every discretization below keeps the state exactly feasible.

enum class Scheme {
  kProjectedEuler,    // x+ = P(x - h G(x)), the catching-up scheme
  kProximalImplicit,  // x+ = P(x - h G(x+)), by fixed-point iteration
  kInteriorRk4,       // RK4 on the tangential field, Euler fallback near faces
};

std::string_view SchemeName(Scheme s);
Scheme ParseScheme(std::string_view name);

struct FlowConfig {
  Scheme scheme = Scheme::kProjectedEuler;
  double step_size = 1e-3;
  double t_max = 10.0;
  double gap_tol = 0.0;
  int record_every = 1;
  double inner_tol = 1e-12;
  int inner_max = 1000;

  void Validate() const;
};

enum class StopReason { kGapTolMet, kTmaxReached };

std::string_view StopReasonName(StopReason r);

struct FlowResult {
  std::vector<double> times;
  std::vector<StrategyProfile> states;
  std::vector<StrategyProfile> cesaro;
  std::vector<double> gaps;
  // True where an RK4 step between the previous record and this one fell back
  // to projected Euler.
  std::vector<bool> fallback;
  StopReason stop_reason = StopReason::kTmaxReached;
  std::size_t steps = 0;
  std::size_t fallback_steps = 0;
  // Implicit steps whose inner iteration hit inner_max.
  std::size_t solver_warnings = 0;
  double max_inner_residual = 0.0;
};

// One gradient block per population, evaluated at a feasible profile.
using Field = std::function<std::vector<std::vector<double>>(const StrategyProfile&)>;
using GapFunction = std::function<double(const StrategyProfile&)>;

struct FlowProblem {
  Field field;
  GapFunction gap;
};

// The returned closures refer to game, which must outlive them.
FlowProblem GameProblem(const TensorGame& game);

// G minus its per-block mean, i.e. the projection onto {sum = 0}.
std::vector<std::vector<double>> TangentField(std::vector<std::vector<double>> grad);

StrategyProfile StepProjectedEuler(const Field& field, const StrategyProfile& x,
                                   double h);

struct ProximalStep {
  StrategyProfile state;
  double residual = 0.0;  // max-norm change of the last inner iteration
  int iterations = 0;
  bool converged = false;  // false is a solver warning; state is the last iterate
};

ProximalStep StepProximalImplicit(const Field& field, const StrategyProfile& x,
                                  double h, double inner_tol, int inner_max);

constexpr double kInteriorMargin = 1e-9;

struct Rk4Step {
  StrategyProfile state;
  bool fell_back = false;
};

Rk4Step StepInteriorRk4(const Field& field, const StrategyProfile& x, double h);

FlowResult Integrate(const FlowProblem& problem, const StrategyProfile& x0,
                     const FlowConfig& cfg);

// Game-specific entry points; G_j is OwnGradient(game, ., j).
StrategyProfile StepProjectedEuler(const TensorGame& game, const StrategyProfile& x,
                                   double h);
ProximalStep StepProximalImplicit(const TensorGame& game, const StrategyProfile& x,
                                  double h, double inner_tol, int inner_max);
Rk4Step StepInteriorRk4(const TensorGame& game, const StrategyProfile& x, double h);
FlowResult Integrate(const TensorGame& game, const StrategyProfile& x0,
                     const FlowConfig& cfg);

// Trapezoidal time average (1/t) ∫_0^t u(s) ds of sampled vector data, with
// linear interpolation when t falls between grid points.
std::vector<double> TimeAverage(std::span<const double> times,
                                std::span<const std::vector<double>> samples, double t);

// Cesàro mean of a recorded trajectory at time t, renormalized per player.
StrategyProfile CesaroMean(std::span<const double> times,
                           std::span<const StrategyProfile> states, double t);

// Crude Lipschitz bound for the stacked gradient: sum_j max|f_j| * (N - 1).
double LipschitzBound(const TensorGame& game);

// 0.1 / L, floored at 1e-6; 0.1 when L is zero.
double DefaultStepSize(double lipschitz);

}  // namespace monoflow

#endif  // MONOFLOW_FLOW_ENGINE_HPP_
