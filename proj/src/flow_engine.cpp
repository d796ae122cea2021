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

#include "monoflow/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monoflow/error.hpp"

namespace monoflow {
namespace {

using Blocks = std::vector<std::vector<double>>;

Blocks ToBlocks(const StrategyProfile& x) {
  Blocks out;
  out.reserve(x.size());
  for (const auto& s : x) out.emplace_back(s.probs().begin(), s.probs().end());
  return out;
}

void CheckField(const Blocks& grad, const StrategyProfile& x) {
  Require(grad.size() == x.size(), "field returned the wrong number of blocks");
  for (std::size_t j = 0; j < x.size(); ++j)
    Require(static_cast<int>(grad[j].size()) == x[j].size(),
            "field block has the wrong length");
}

// Writes x - h * d into out; false if any entry falls below the interior margin.
bool InteriorShift(const StrategyProfile& x, const Blocks& d, double h,
                   StrategyProfile& out) {
  out.clear();
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    std::vector<double> v(x[j].probs().begin(), x[j].probs().end());
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] -= h * d[j][k];
      if (!(v[k] >= kInteriorMargin)) return false;
    }
    out.emplace_back(std::move(v));
  }
  return true;
}

bool IsInterior(const StrategyProfile& x) {
  for (const auto& s : x)
    for (double p : s.probs())
      if (p < kInteriorMargin) return false;
  return true;
}

}  // namespace

std::string_view SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kProjectedEuler:
      return "projected-euler";
    case Scheme::kProximalImplicit:
      return "proximal-implicit";
    case Scheme::kInteriorRk4:
      return "interior-rk4";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "projected-euler") return Scheme::kProjectedEuler;
  if (name == "proximal-implicit") return Scheme::kProximalImplicit;
  if (name == "interior-rk4") return Scheme::kInteriorRk4;
  Fail(ErrorCode::kInvalidInput, "unknown scheme '" + std::string(name) + "'");
}

std::string_view StopReasonName(StopReason r) {
  return r == StopReason::kGapTolMet ? "gap_tol-met" : "t_max-reached";
}

void FlowConfig::Validate() const {
  Require(std::isfinite(step_size) && step_size > 0.0, "step size must be positive");
  Require(std::isfinite(t_max) && t_max > 0.0, "t_max must be positive");
  Require(gap_tol >= 0.0, "gap_tol must be nonnegative");
  Require(record_every >= 1, "record_every must be at least 1");
  Require(inner_tol > 0.0, "inner_tol must be positive");
  Require(inner_max >= 1, "inner_max must be at least 1");
}

FlowProblem GameProblem(const TensorGame& game) {
  FlowProblem p;
  p.field = [&game](const StrategyProfile& x) {
    Blocks g;
    g.reserve(x.size());
    for (int j = 0; j < game.num_players(); ++j) g.push_back(OwnGradient(game, x, j));
    return g;
  };
  p.gap = [&game](const StrategyProfile& x) { return NashGap(game, x); };
  return p;
}

Blocks TangentField(Blocks grad) {
  for (auto& block : grad) {
    double mean = 0.0;
    for (double g : block) mean += g;
    mean /= static_cast<double>(block.size());
    for (double& g : block) g -= mean;
  }
  return grad;
}

StrategyProfile StepProjectedEuler(const Field& field, const StrategyProfile& x,
                                   double h) {
  Require(h > 0.0, "step size must be positive");
  const Blocks grad = field(x);
  CheckField(grad, x);
  StrategyProfile out;
  out.reserve(x.size());
  std::vector<double> v;
  for (std::size_t j = 0; j < x.size(); ++j) {
    v.assign(x[j].probs().begin(), x[j].probs().end());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= h * grad[j][k];
    out.push_back(SimplexProject(v));
  }
  return out;
}

ProximalStep StepProximalImplicit(const Field& field, const StrategyProfile& x,
                                  double h, double inner_tol, int inner_max) {
  Require(h > 0.0, "step size must be positive");
  Require(inner_tol > 0.0 && inner_max >= 1, "invalid inner iteration settings");
  ProximalStep step{x, 0.0, 0, false};
  std::vector<double> v;
  while (step.iterations < inner_max) {
    const Blocks grad = field(step.state);
    CheckField(grad, x);
    StrategyProfile next;
    next.reserve(x.size());
    double change = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      v.assign(x[j].probs().begin(), x[j].probs().end());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= h * grad[j][k];
      next.push_back(SimplexProject(v));
      for (int k = 0; k < x[j].size(); ++k)
        change = std::max(change, std::abs(next[j][k] - step.state[j][k]));
    }
    step.state = std::move(next);
    step.residual = change;
    ++step.iterations;
    if (change < inner_tol) {
      step.converged = true;
      break;
    }
  }
  return step;
}

Rk4Step StepInteriorRk4(const Field& field, const StrategyProfile& x, double h) {
  Require(h > 0.0, "step size must be positive");
  auto slope = [&](const StrategyProfile& y) {
    Blocks g = field(y);
    CheckField(g, y);
    return TangentField(std::move(g));
  };
  auto fallback = [&] { return Rk4Step{StepProjectedEuler(field, x, h), true}; };
  if (!IsInterior(x)) return fallback();

  // Slopes are T(y); the ODE is y' = -T(y).
  StrategyProfile stage;
  const Blocks k1 = slope(x);
  if (!InteriorShift(x, k1, h / 2, stage)) return fallback();
  const Blocks k2 = slope(stage);
  if (!InteriorShift(x, k2, h / 2, stage)) return fallback();
  const Blocks k3 = slope(stage);
  if (!InteriorShift(x, k3, h, stage)) return fallback();
  const Blocks k4 = slope(stage);

  Blocks combined = k1;
  for (std::size_t j = 0; j < combined.size(); ++j)
    for (std::size_t k = 0; k < combined[j].size(); ++k)
      combined[j][k] = (k1[j][k] + 2.0 * k2[j][k] + 2.0 * k3[j][k] + k4[j][k]) / 6.0;
  StrategyProfile out;
  if (!InteriorShift(x, combined, h, out)) return fallback();
  return {std::move(out), false};
}

FlowResult Integrate(const FlowProblem& problem, const StrategyProfile& x0,
                     const FlowConfig& cfg) {
  cfg.Validate();
  Require(!x0.empty(), "initial profile is empty");
  const double h = cfg.step_size;
  const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_max / h - 1e-9));

  FlowResult r;
  auto record = [&](double t, const StrategyProfile& state, StrategyProfile mean,
                    bool fell_back) {
    r.times.push_back(t);
    r.states.push_back(state);
    r.gaps.push_back(problem.gap(mean));
    r.cesaro.push_back(std::move(mean));
    r.fallback.push_back(fell_back);
    return r.gaps.back() <= cfg.gap_tol;
  };

  StrategyProfile x = x0;
  if (record(0.0, x, x, false)) {
    r.stop_reason = StopReason::kGapTolMet;
    return r;
  }

  Blocks integral = ToBlocks(x0);
  for (auto& b : integral) std::fill(b.begin(), b.end(), 0.0);
  bool fell_back_since_record = false;

  for (std::size_t k = 1; k <= n_steps; ++k) {
    StrategyProfile next;
    switch (cfg.scheme) {
      case Scheme::kProjectedEuler:
        next = StepProjectedEuler(problem.field, x, h);
        break;
      case Scheme::kProximalImplicit: {
        ProximalStep s = StepProximalImplicit(problem.field, x, h, cfg.inner_tol,
                                              cfg.inner_max);
        if (!s.converged) ++r.solver_warnings;
        r.max_inner_residual = std::max(r.max_inner_residual, s.residual);
        next = std::move(s.state);
        break;
      }
      case Scheme::kInteriorRk4: {
        Rk4Step s = StepInteriorRk4(problem.field, x, h);
        if (s.fell_back) {
          ++r.fallback_steps;
          fell_back_since_record = true;
        }
        next = std::move(s.state);
        break;
      }
    }
    for (std::size_t j = 0; j < x.size(); ++j)
      for (int i = 0; i < x[j].size(); ++i)
        integral[j][static_cast<std::size_t>(i)] += 0.5 * h * (x[j][i] + next[j][i]);
    x = std::move(next);
    r.steps = k;

    if (k % static_cast<std::size_t>(cfg.record_every) == 0 || k == n_steps) {
      const double t = static_cast<double>(k) * h;
      StrategyProfile mean;
      mean.reserve(x.size());
      for (const auto& b : integral) {
        std::vector<double> avg(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) avg[i] = b[i] / t;
        mean.emplace_back(std::move(avg));
      }
      const bool met = record(t, x, std::move(mean), fell_back_since_record);
      fell_back_since_record = false;
      if (met) {
        r.stop_reason = StopReason::kGapTolMet;
        return r;
      }
    }
  }
  r.stop_reason = StopReason::kTmaxReached;
  return r;
}

StrategyProfile StepProjectedEuler(const TensorGame& game, const StrategyProfile& x,
                                   double h) {
  CheckProfile(game, x);
  return StepProjectedEuler(GameProblem(game).field, x, h);
}

ProximalStep StepProximalImplicit(const TensorGame& game, const StrategyProfile& x,
                                  double h, double inner_tol, int inner_max) {
  CheckProfile(game, x);
  return StepProximalImplicit(GameProblem(game).field, x, h, inner_tol, inner_max);
}

Rk4Step StepInteriorRk4(const TensorGame& game, const StrategyProfile& x, double h) {
  CheckProfile(game, x);
  return StepInteriorRk4(GameProblem(game).field, x, h);
}

FlowResult Integrate(const TensorGame& game, const StrategyProfile& x0,
                     const FlowConfig& cfg) {
  CheckProfile(game, x0);
  return Integrate(GameProblem(game), x0, cfg);
}

std::vector<double> TimeAverage(std::span<const double> times,
                                std::span<const std::vector<double>> samples,
                                double t) {
  Require(times.size() == samples.size() && !times.empty(),
          "times and samples must be nonempty and the same length");
  Require(t > 0.0 && t <= times.back() + 1e-12 && times.front() == 0.0,
          "averaging time " + std::to_string(t) + " is outside the recorded grid");
  const std::size_t dim = samples[0].size();
  std::vector<double> acc(dim, 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = times[i - 1];
    const double b = times[i];
    Require(b > a, "time grid must be increasing");
    Require(samples[i].size() == dim, "samples have inconsistent dimensions");
    if (a >= t) break;
    const double end = std::min(b, t);
    const double w = (end - a) / (b - a);
    for (std::size_t k = 0; k < dim; ++k) {
      const double u_end = samples[i - 1][k] + w * (samples[i][k] - samples[i - 1][k]);
      acc[k] += 0.5 * (end - a) * (samples[i - 1][k] + u_end);
    }
  }
  for (double& v : acc) v /= t;
  return acc;
}

StrategyProfile CesaroMean(std::span<const double> times,
                           std::span<const StrategyProfile> states, double t) {
  Require(times.size() == states.size() && !states.empty(),
          "times and states must be nonempty and the same length");
  const std::size_t players = states[0].size();
  StrategyProfile out;
  for (std::size_t j = 0; j < players; ++j) {
    std::vector<std::vector<double>> column;
    column.reserve(states.size());
    for (const auto& s : states) {
      Require(s.size() == players, "states have inconsistent player counts");
      column.emplace_back(s[j].probs().begin(), s[j].probs().end());
    }
    out.emplace_back(TimeAverage(times, column, t));
  }
  return out;
}

double LipschitzBound(const TensorGame& game) {
  double total = 0.0;
  for (int j = 0; j < game.num_players(); ++j) {
    double biggest = 0.0;
    for (double c : game.costs(j)) biggest = std::max(biggest, std::abs(c));
    total += biggest;
  }
  return total * static_cast<double>(game.num_players() - 1);
}

double DefaultStepSize(double lipschitz) {
  if (lipschitz <= 0.0) return 0.1;
  return std::max(0.1 / lipschitz, 1e-6);
}

}  // namespace monoflow
