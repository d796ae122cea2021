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

#ifndef MONOFLOW_ANALYTIC_ORACLE_HPP_
#define MONOFLOW_ANALYTIC_ORACLE_HPP_

#include "monoflow/game_core.hpp"

namespace monoflow::oracle {

// Closed-form ground truth for a 2x2 zero-sum game whose flow circles its
// unique equilibrium ((1/2, 1/2), (2/3, 1/3)):
//   F_1 = 3 x11 x21 + x12 x21 + 4 x12 x22,   F_2 = -F_1.
// In reduced coordinates v1 = x11, v2 = x21 the interior flow is
//   v1' = 2 - 3 v2,   v2' = 3 v1 - 3/2,
// a counterclockwise rotation with angular rate 3 about (1/2, 2/3).

struct ReducedState {
  double v1;
  double v2;
};

inline constexpr double kCenterV1 = 0.5;
inline constexpr double kCenterV2 = 2.0 / 3.0;
inline constexpr double kAngularRate = 3.0;

TensorGame AppendixGame();

// Distance from (1/2, 2/3).
double Radius(ReducedState v);

// Largest radius whose circle stays inside [0,1]^2; 1/3.
double LimitCircleRadius();

// Exact trajectory from v0. Requires Radius(v0) <= 1/3 and t >= 0.
ReducedState AnalyticSolution(ReducedState v0, double t);

// Exact time average (1/t) ∫_0^t v(s) ds. Requires Radius(v0) <= 1/3, t > 0.
ReducedState AnalyticCesaro(ReducedState v0, double t);

// (x11, x21) of a 2x2 profile.
ReducedState Reduce(const StrategyProfile& x);
// ((v1, 1 - v1), (v2, 1 - v2)); both coordinates must lie in [0, 1].
StrategyProfile Lift(ReducedState v);

}  // namespace monoflow::oracle

#endif  // MONOFLOW_ANALYTIC_ORACLE_HPP_
