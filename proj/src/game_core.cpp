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

#include "monoflow/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "monoflow/error.hpp"

namespace monoflow {
namespace {

constexpr double kSumSlack = 1e-9;
constexpr double kNegativeSlack = 1e-12;
// Sums this close to one are kept bit-for-bit, which makes projection of an
// already feasible point the identity.
constexpr double kExactSumSlack = 1e-13;

// Contracts every axis of a row-major tensor except `keep` against the
// matching strategy. With keep < 0 the result has a single entry.
std::vector<double> ContractExcept(const std::vector<double>& tensor,
                                   const std::vector<int>& dims,
                                   const StrategyProfile& x, int keep) {
  std::vector<double> cur = tensor;
  std::vector<int> shape = dims;
  for (int axis = static_cast<int>(dims.size()) - 1; axis >= 0; --axis) {
    if (axis == keep) continue;
    std::size_t outer = 1;
    for (int a = 0; a < axis; ++a) outer *= static_cast<std::size_t>(shape[a]);
    std::size_t inner = 1;
    for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a)
      inner *= static_cast<std::size_t>(shape[a]);
    const auto width = static_cast<std::size_t>(shape[static_cast<std::size_t>(axis)]);
    std::vector<double> next(outer * inner, 0.0);
    const auto& probs = x[static_cast<std::size_t>(axis)];
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t a = 0; a < width; ++a) {
        const double w = probs[static_cast<int>(a)];
        if (w == 0.0) continue;
        const double* src = &cur[(o * width + a) * inner];
        double* dst = &next[o * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
    cur.swap(next);
    shape.erase(shape.begin() + axis);
  }
  return cur;
}

void CheckPlayer(const TensorGame& game, int player) {
  Require(player >= 0 && player < game.num_players(),
          "player index " + std::to_string(player) + " out of range");
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  Require(!probs_.empty(), "mixed strategy needs at least one action");
  double sum = 0.0;
  for (double& p : probs_) {
    Require(std::isfinite(p), "mixed strategy entry is not finite");
    Require(p >= -kNegativeSlack,
            "mixed strategy entry " + std::to_string(p) + " is negative");
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  Require(std::abs(sum - 1.0) <= kSumSlack,
          "mixed strategy entries sum to " + std::to_string(sum) + ", not 1");
  if (std::abs(sum - 1.0) > kExactSumSlack) {
    for (double& p : probs_) p /= sum;
  }
}

MixedStrategy MixedStrategy::Uniform(int m) {
  Require(m >= 1, "mixed strategy needs at least one action");
  return MixedStrategy(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
}

MixedStrategy MixedStrategy::Pure(int m, int action) {
  Require(m >= 1 && action >= 0 && action < m, "pure action out of range");
  std::vector<double> p(static_cast<std::size_t>(m), 0.0);
  p[static_cast<std::size_t>(action)] = 1.0;
  return MixedStrategy(std::move(p));
}

TensorGame::TensorGame(std::vector<int> action_counts,
                       std::vector<std::vector<double>> costs)
    : actions_(std::move(action_counts)), costs_(std::move(costs)) {
  Require(!actions_.empty(), "a game needs at least one player");
  for (int m : actions_) {
    Require(m >= 1, "every player needs at least one action");
    joint_ *= static_cast<std::size_t>(m);
  }
  Require(costs_.size() == actions_.size(),
          "expected " + std::to_string(actions_.size()) + " cost tensors, got " +
              std::to_string(costs_.size()));
  for (std::size_t j = 0; j < costs_.size(); ++j) {
    Require(costs_[j].size() == joint_,
            "cost tensor " + std::to_string(j + 1) + " has " +
                std::to_string(costs_[j].size()) + " entries, expected " +
                std::to_string(joint_));
    for (double c : costs_[j]) Require(std::isfinite(c), "cost entry is not finite");
  }
  zero_sum_ = true;
  for (std::size_t s = 0; s < joint_ && zero_sum_; ++s) {
    double total = 0.0;
    for (const auto& f : costs_) total += f[s];
    zero_sum_ = std::abs(total) <= 1e-12;
  }
}

std::size_t TensorGame::Index(std::span<const int> joint) const {
  Require(joint.size() == actions_.size(), "joint action has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    Require(joint[i] >= 0 && joint[i] < actions_[i], "joint action out of range");
    idx = idx * static_cast<std::size_t>(actions_[i]) + static_cast<std::size_t>(joint[i]);
  }
  return idx;
}

std::vector<int> TensorGame::Unflatten(std::size_t index) const {
  std::vector<int> joint(actions_.size());
  for (std::size_t i = actions_.size(); i-- > 0;) {
    const auto m = static_cast<std::size_t>(actions_[i]);
    joint[i] = static_cast<int>(index % m);
    index /= m;
  }
  return joint;
}

MixedStrategy SimplexProject(std::span<const double> v) {
  Require(!v.empty(), "cannot project an empty vector");
  double sum = 0.0;
  bool feasible = true;
  for (double e : v) {
    Require(std::isfinite(e), "projection input is not finite");
    feasible = feasible && e >= 0.0;
    sum += e;
  }
  if (feasible && std::abs(sum - 1.0) <= kExactSumSlack) {
    return MixedStrategy(std::vector<double>(v.begin(), v.end()));
  }

  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    running += v[order[k]];
    const double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (v[order[k]] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau, 0.0);
    total += out[i];
  }
  for (double& e : out) e /= total;
  return MixedStrategy(std::move(out));
}

void CheckProfile(const TensorGame& game, const StrategyProfile& x) {
  Require(static_cast<int>(x.size()) == game.num_players(),
          "profile has " + std::to_string(x.size()) + " strategies for a " +
              std::to_string(game.num_players()) + "-player game");
  for (int i = 0; i < game.num_players(); ++i) {
    Require(x[static_cast<std::size_t>(i)].size() == game.actions(i),
            "strategy of player " + std::to_string(i + 1) + " has " +
                std::to_string(x[static_cast<std::size_t>(i)].size()) +
                " entries, expected " + std::to_string(game.actions(i)));
  }
}

double ExpectedCost(const TensorGame& game, const StrategyProfile& x, int player) {
  CheckPlayer(game, player);
  CheckProfile(game, x);
  return ContractExcept(game.costs(player), game.action_counts(), x, -1)[0];
}

std::vector<double> OwnGradient(const TensorGame& game, const StrategyProfile& x,
                                int player) {
  CheckPlayer(game, player);
  CheckProfile(game, x);
  return ContractExcept(game.costs(player), game.action_counts(), x, player);
}

BestResponse ComputeBestResponse(const TensorGame& game, const StrategyProfile& x,
                                 int player) {
  const auto grad = OwnGradient(game, x, player);
  const auto it = std::min_element(grad.begin(), grad.end());
  return {*it, static_cast<int>(it - grad.begin())};
}

double NashGap(const TensorGame& game, const StrategyProfile& x) {
  CheckProfile(game, x);
  double gap = 0.0;
  for (int j = 0; j < game.num_players(); ++j) {
    const auto grad = OwnGradient(game, x, j);
    const auto& xj = x[static_cast<std::size_t>(j)];
    double cost = 0.0;
    for (int k = 0; k < xj.size(); ++k) cost += grad[static_cast<std::size_t>(k)] * xj[k];
    gap += cost - *std::min_element(grad.begin(), grad.end());
  }
  return gap;
}

StrategyProfile UniformProfile(const TensorGame& game) {
  StrategyProfile x;
  x.reserve(static_cast<std::size_t>(game.num_players()));
  for (int m : game.action_counts()) x.push_back(MixedStrategy::Uniform(m));
  return x;
}

}  // namespace monoflow
