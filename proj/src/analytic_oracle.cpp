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

#include "monoflow/analytic_oracle.hpp"

#include <cmath>
#include <string>

#include "monoflow/error.hpp"

namespace monoflow::oracle {
namespace {

// Rounding slack on the small-data disc, so that points constructed on the
// limit circle are accepted.
constexpr double kDiscSlack = 1e-12;

void CheckSmallData(ReducedState v0) {
  if (!(Radius(v0) <= LimitCircleRadius() + kDiscSlack))
    Fail(ErrorCode::kDomain, "initial point has radius " + std::to_string(Radius(v0)) +
                                 " > 1/3; no closed form");
}

}  // namespace

TensorGame AppendixGame() {
  // Row-major over (s1, s2): (1,1), (1,2), (2,1), (2,2).
  std::vector<double> f1 = {3.0, 0.0, 1.0, 4.0};
  std::vector<double> f2 = {-3.0, 0.0, -1.0, -4.0};
  return TensorGame({2, 2}, {std::move(f1), std::move(f2)});
}

double Radius(ReducedState v) { return std::hypot(v.v1 - kCenterV1, v.v2 - kCenterV2); }

double LimitCircleRadius() { return 1.0 / 3.0; }

ReducedState AnalyticSolution(ReducedState v0, double t) {
  CheckSmallData(v0);
  if (!(t >= 0.0)) Fail(ErrorCode::kDomain, "time must be nonnegative");
  const double a = v0.v1 - kCenterV1;
  const double b = v0.v2 - kCenterV2;
  const double c = std::cos(kAngularRate * t);
  const double s = std::sin(kAngularRate * t);
  return {a * c - b * s + kCenterV1, b * c + a * s + kCenterV2};
}

ReducedState AnalyticCesaro(ReducedState v0, double t) {
  CheckSmallData(v0);
  if (!(t > 0.0)) Fail(ErrorCode::kDomain, "averaging time must be positive");
  const double a = v0.v1 - kCenterV1;
  const double b = v0.v2 - kCenterV2;
  const double wt = kAngularRate * t;
  const double sinc = std::sin(wt) / wt;
  const double cosc = (1.0 - std::cos(wt)) / wt;
  return {kCenterV1 + a * sinc - b * cosc, kCenterV2 + b * sinc + a * cosc};
}

ReducedState Reduce(const StrategyProfile& x) {
  Require(x.size() == 2 && x[0].size() == 2 && x[1].size() == 2,
          "reduction needs a two-player, two-action profile");
  return {x[0][0], x[1][0]};
}

StrategyProfile Lift(ReducedState v) {
  Require(v.v1 >= 0.0 && v.v1 <= 1.0 && v.v2 >= 0.0 && v.v2 <= 1.0,
          "reduced coordinates must lie in [0, 1]");
  return {MixedStrategy({v.v1, 1.0 - v.v1}), MixedStrategy({v.v2, 1.0 - v.v2})};
}

}  // namespace monoflow::oracle
