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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "monoflow/analytic_oracle.hpp"
#include "monoflow/error.hpp"
#include "monoflow/flow_engine.hpp"
#include "test_support.hpp"

namespace monoflow {
namespace {

using testing::Profile2;

StrategyProfile Equilibrium() { return Profile2({0.5, 0.5}, {2.0 / 3, 1.0 / 3}); }

void CheckFeasible(const StrategyProfile& x) {
  for (const auto& s : x) {
    double sum = 0.0;
    for (double p : s.probs()) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("config validation") {
  FlowConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  cfg.step_size = 0.0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = FlowConfig{};
  cfg.t_max = -1;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = FlowConfig{};
  cfg.gap_tol = -1e-3;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = FlowConfig{};
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = FlowConfig{};
  cfg.inner_max = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  for (Scheme s : {Scheme::kProjectedEuler, Scheme::kProximalImplicit, Scheme::kInteriorRk4})
    CHECK(ParseScheme(SchemeName(s)) == s);
  CHECK_THROWS_AS(ParseScheme("euler"), Error);
}

TEST_CASE("projected euler examples") {
  const TensorGame g = oracle::AppendixGame();
  const auto x = StepProjectedEuler(g, Profile2({0.5, 0.5}, {1, 0}), 0.01);
  CHECK(x[0][0] == doctest::Approx(0.49).epsilon(1e-14));
  CHECK(x[0][1] == doctest::Approx(0.51).epsilon(1e-14));
  CHECK(x[1] == MixedStrategy({1, 0}));

  Rng rng(1);
  const TensorGame c = testing::ConstantGame({3, 2}, 2.5);
  const auto y = testing::RandomProfile(rng, c);
  CHECK(testing::MaxAbsDiff(StepProjectedEuler(c, y, 0.1), y) <= 1e-15);

  const auto e = StepProjectedEuler(g, Equilibrium(), 1e-3);
  CHECK(testing::MaxAbsDiff(e, Equilibrium()) <= 1e-15);
}

TEST_CASE("proximal implicit examples") {
  const TensorGame c = testing::ConstantGame({2, 3}, -1.0);
  Rng rng(2);
  const auto y = testing::RandomProfile(rng, c);
  const auto step = StepProximalImplicit(c, y, 0.1, 1e-12, 100);
  CHECK(step.converged);
  CHECK(step.iterations == 1);
  CHECK(testing::MaxAbsDiff(step.state, y) <= 1e-15);

  const TensorGame g = oracle::AppendixGame();
  const auto eq = StepProximalImplicit(g, Equilibrium(), 0.05, 1e-12, 1000);
  CHECK(eq.converged);
  CHECK(testing::MaxAbsDiff(eq.state, Equilibrium()) <= 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    const auto v = oracle::ReducedState{0.3 + 0.4 * rng.Uniform(), 0.3 + 0.4 * rng.Uniform()};
    const auto x = oracle::Lift(v);
    const auto imp = StepProximalImplicit(g, x, 0.01, 1e-13, 1000);
    CHECK(imp.converged);
    CHECK(imp.residual <= 1e-13);
    CHECK(testing::MaxAbsDiff(imp.state, StepProjectedEuler(g, x, 0.01)) <= 1e-3);
  }
}

TEST_CASE("explicit and implicit steps agree to second order") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const TensorGame g = testing::RandomZeroSum(rng, 3, 3);
    StrategyProfile x;
    for (int j = 0; j < 2; ++j) {
      // Interior: every entry at least 0.2.
      auto d = rng.Dirichlet(3);
      for (double& p : d) p = 0.2 + 0.4 * p;
      x.emplace_back(d);
    }
    double prev = 0.0;
    for (double h : {1e-2, 5e-3}) {
      const auto imp = StepProximalImplicit(g, x, h, 1e-14, 1000);
      const double diff = testing::MaxAbsDiff(imp.state, StepProjectedEuler(g, x, h));
      // |G| <= 1 and L <= 1 for entries in [-1, 1].
      CHECK(diff <= 2.0 * h * h);
      if (prev > 0.0) CHECK(diff <= prev / 4.0 * 1.2);
      prev = diff;
    }
  }
}

TEST_CASE("tangent field recovers the reduced dynamics") {
  const TensorGame g = oracle::AppendixGame();
  const auto x = Profile2({0.5, 0.5}, {1, 0});
  const auto t = TangentField({OwnGradient(g, x, 0), OwnGradient(g, x, 1)});
  CHECK(t[0][0] == doctest::Approx(1.0));
  CHECK(t[0][1] == doctest::Approx(-1.0));
  // Velocity -T at random interior points matches v1' = 2 - 3 v2, v2' = 3 v1 - 3/2.
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const oracle::ReducedState v{rng.Uniform(), rng.Uniform()};
    const auto y = oracle::Lift(v);
    const auto f = TangentField({OwnGradient(g, y, 0), OwnGradient(g, y, 1)});
    CHECK(-f[0][0] == doctest::Approx(2.0 - 3.0 * v.v2).epsilon(1e-12));
    CHECK(-f[1][0] == doctest::Approx(3.0 * v.v1 - 1.5).epsilon(1e-12));
  }
}

TEST_CASE("interior rk4 steps") {
  const TensorGame g = oracle::AppendixGame();
  const auto at_eq = StepInteriorRk4(g, Equilibrium(), 1e-2);
  CHECK_FALSE(at_eq.fell_back);
  CHECK(testing::MaxAbsDiff(at_eq.state, Equilibrium()) <= 1e-15);

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = 0.3 * rng.Uniform();
    const double a = 2.0 * std::numbers::pi * rng.Uniform();
    const oracle::ReducedState v{oracle::kCenterV1 + r * std::cos(a),
                                 oracle::kCenterV2 + r * std::sin(a)};
    const double h = 1e-2 * rng.UniformOpenZero();
    const auto s = StepInteriorRk4(g, oracle::Lift(v), h);
    CHECK_FALSE(s.fell_back);
    // On a pure rotation by theta, RK4 scales the radius by |R(i theta)| with
    // R(z) = 1 + z + z^2/2 + z^3/6 + z^4/24.
    const double th = oracle::kAngularRate * h;
    const double re = 1.0 - th * th / 2.0 + th * th * th * th / 24.0;
    const double im = th - th * th * th / 6.0;
    const double predicted = std::hypot(re, im) * r;
    const double radius = oracle::Radius(oracle::Reduce(s.state));
    CHECK(std::abs(radius - predicted) <= 1e-15);
    CHECK(std::abs(radius - r) <= std::pow(th, 6) / 144.0 * r + 1e-15);
  }

  // Next to a face the step falls back to projected Euler.
  const auto edge = Profile2({1e-10, 1 - 1e-10}, {0.5, 0.5});
  const auto fb = StepInteriorRk4(g, edge, 1e-3);
  CHECK(fb.fell_back);
  CHECK(fb.state == StepProjectedEuler(g, edge, 1e-3));
}

TEST_CASE("integrate from the equilibrium") {
  const TensorGame g = oracle::AppendixGame();
  for (Scheme s : {Scheme::kProjectedEuler, Scheme::kProximalImplicit, Scheme::kInteriorRk4}) {
    FlowConfig cfg;
    cfg.scheme = s;
    cfg.step_size = 1e-2;
    cfg.t_max = 5.0;
    cfg.gap_tol = 0.0;
    const auto r = Integrate(g, Equilibrium(), cfg);
    for (std::size_t i = 0; i < r.times.size(); ++i)
      CHECK(testing::MaxAbsDiff(r.states[i], Equilibrium()) <= 1e-9 * (1.0 + r.times[i]));
    cfg.gap_tol = 1e-8;
    const auto stop = Integrate(g, Equilibrium(), cfg);
    CHECK(stop.stop_reason == StopReason::kGapTolMet);
    CHECK(stop.times.size() == 1);
    CHECK(stop.steps == 0);
  }
}

TEST_CASE("integrate on a constant game") {
  const TensorGame c = testing::ConstantGame({2, 3, 2}, 1.0);
  Rng rng(6);
  const auto x0 = testing::RandomProfile(rng, c);
  FlowConfig cfg;
  cfg.step_size = 0.1;
  cfg.t_max = 3.0;
  // Every profile has gap 0 here, so the default run stops at once.
  const auto stopped = Integrate(c, x0, cfg);
  CHECK(stopped.stop_reason == StopReason::kGapTolMet);
  CHECK(stopped.times.size() == 1);
  // With a gap that never meets the tolerance the full path is recorded.
  FlowProblem p = GameProblem(c);
  p.gap = [](const StrategyProfile&) { return 1.0; };
  const auto r = Integrate(p, x0, cfg);
  CHECK(r.times.size() == 31);
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    CHECK(testing::MaxAbsDiff(r.states[i], x0) <= 1e-15);
    CHECK(testing::MaxAbsDiff(r.cesaro[i], x0) <= 1e-15);
  }
}

TEST_CASE("flow result structure") {
  const TensorGame g = oracle::AppendixGame();
  const auto x0 = oracle::Lift({0.9, 0.3});
  for (Scheme s : {Scheme::kProjectedEuler, Scheme::kProximalImplicit, Scheme::kInteriorRk4}) {
    FlowConfig cfg;
    cfg.scheme = s;
    cfg.step_size = 1e-2;
    cfg.t_max = 10.0;
    cfg.record_every = 7;
    const auto r = Integrate(g, x0, cfg);
    CHECK(r.times.front() == 0.0);
    CHECK(r.times.back() == doctest::Approx(10.0));
    CHECK(r.steps == 1000);
    CHECK(r.cesaro.front() == x0);
    CHECK(r.states.front() == x0);
    CHECK(r.stop_reason == StopReason::kTmaxReached);
    for (std::size_t i = 1; i < r.times.size(); ++i) {
      CHECK(r.times[i] > r.times[i - 1]);
      CheckFeasible(r.states[i]);
      CheckFeasible(r.cesaro[i]);
      CHECK(r.gaps[i] == doctest::Approx(NashGap(g, r.cesaro[i])).epsilon(1e-15));
    }
    // Identical inputs give identical results.
    const auto again = Integrate(g, x0, cfg);
    CHECK(again.states == r.states);
    CHECK(again.gaps == r.gaps);
  }
}

TEST_CASE("cesaro means") {
  // Constant trajectory.
  const std::vector<double> times = {0.0, 0.5, 1.5, 2.0};
  const StrategyProfile c = Profile2({0.2, 0.8}, {0.1, 0.9});
  const std::vector<StrategyProfile> states(4, c);
  CHECK(testing::MaxAbsDiff(CesaroMean(times, states, 1.7), c) <= 1e-15);

  // Ramp u(s) = s averages to t/2, including at an interpolated end point.
  std::vector<double> ts;
  std::vector<std::vector<double>> ramp;
  for (int i = 0; i <= 10; ++i) {
    ts.push_back(0.3 * i);
    ramp.push_back({0.3 * i});
  }
  CHECK(TimeAverage(ts, ramp, 3.0)[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(TimeAverage(ts, ramp, 1.0)[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(TimeAverage(ts, ramp, 0.0), Error);
  CHECK_THROWS_AS(TimeAverage(ts, ramp, 3.5), Error);

  // One period of the closed-form circle averages to its center.
  const double period = 2.0 * std::numbers::pi / 3.0;
  std::vector<double> grid;
  std::vector<StrategyProfile> path;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double t = period * i / n;
    grid.push_back(t);
    path.push_back(oracle::Lift(oracle::AnalyticSolution({0.8, 2.0 / 3}, t)));
  }
  const auto mean = oracle::Reduce(CesaroMean(grid, path, period));
  CHECK(mean.v1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(mean.v2 == doctest::Approx(2.0 / 3).epsilon(1e-10));
}

TEST_CASE("lipschitz bound and default step") {
  CHECK(LipschitzBound(oracle::AppendixGame()) == 8.0);
  CHECK(LipschitzBound(testing::ConstantGame({2, 2, 2}, -3.0)) == 3.0 * 2 * 3);
  Rng rng(7);
  CHECK(LipschitzBound(testing::RandomGame(rng, {4})) == 0.0);
  CHECK(DefaultStepSize(8.0) == doctest::Approx(0.0125));
  CHECK(DefaultStepSize(0.0) == 0.1);
  CHECK(DefaultStepSize(1e9) == 1e-6);
}

TEST_CASE("lipschitz bound dominates observed gradient changes") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const TensorGame g = testing::RandomGame(rng, {3, 2, 2});
    const double l = LipschitzBound(g);
    const auto x = testing::RandomProfile(rng, g);
    const auto y = testing::RandomProfile(rng, g);
    double dg = 0.0;
    for (int j = 0; j < 3; ++j) {
      const auto a = OwnGradient(g, x, j);
      const auto b = OwnGradient(g, y, j);
      for (std::size_t k = 0; k < a.size(); ++k) dg += (a[k] - b[k]) * (a[k] - b[k]);
    }
    CHECK(std::sqrt(dg) <= l * std::sqrt(testing::ProfileDistance2(x, y)) + 1e-12);
  }
}

TEST_CASE("projected euler follows the reduced circle") {
  // O(h) agreement per unit time with the closed form.
  const TensorGame g = oracle::AppendixGame();
  const oracle::ReducedState v0{0.8, 2.0 / 3};
  for (double h : {2e-3, 1e-3}) {
    FlowConfig cfg;
    cfg.step_size = h;
    cfg.t_max = 2.0;
    cfg.record_every = 10;
    const auto r = Integrate(g, oracle::Lift(v0), cfg);
    double err = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      const auto a = oracle::AnalyticSolution(v0, r.times[i]);
      const auto v = oracle::Reduce(r.states[i]);
      err = std::max(err, std::hypot(v.v1 - a.v1, v.v2 - a.v2) / std::max(r.times[i], 1.0));
    }
    CHECK(err <= 5.0 * h);
  }
}

TEST_CASE("cesaro gap decays like 1/t on random zero-sum games") {
  Rng rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    const TensorGame g = testing::RandomZeroSum(rng, 3, 3);
    FlowConfig cfg;
    cfg.step_size = 1e-3;
    cfg.t_max = 40.0;
    cfg.record_every = 500;
    const auto r = Integrate(g, testing::RandomProfile(rng, g), cfg);
    for (std::size_t i = 0; i < r.times.size(); ++i)
      if (r.times[i] >= 10.0) CHECK(r.gaps[i] <= 8.0 / r.times[i]);
  }
}

}  // namespace
}  // namespace monoflow
