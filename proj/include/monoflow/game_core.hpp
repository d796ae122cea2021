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

#ifndef MONOFLOW_GAME_CORE_HPP_
#define MONOFLOW_GAME_CORE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace monoflow {

// A probability vector on a finite action set. Construction validates and
// renormalizes: raw sums within 1e-9 of one are rescaled, entries in
// [-1e-12, 0) are clamped to zero, anything else is rejected.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Uniform(int m);
  static MixedStrategy Pure(int m, int action);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int k) const { return probs_[static_cast<std::size_t>(k)]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// Player i's strategy sits at index i.
using StrategyProfile = std::vector<MixedStrategy>;

// Finite N-player game given by cost tensors f_j over joint pure actions.
// Tensors are flat, row-major over (s_1, ..., s_N) with s_1 slowest.
class TensorGame {
 public:
  TensorGame(std::vector<int> action_counts,
             std::vector<std::vector<double>> costs);

  int num_players() const { return static_cast<int>(actions_.size()); }
  const std::vector<int>& action_counts() const { return actions_; }
  int actions(int player) const { return actions_[static_cast<std::size_t>(player)]; }
  std::size_t num_joint_actions() const { return joint_; }
  const std::vector<double>& costs(int player) const {
    return costs_[static_cast<std::size_t>(player)];
  }
  const std::vector<std::vector<double>>& all_costs() const { return costs_; }

  // True iff the player costs sum to zero (within 1e-12) at every joint action.
  bool zero_sum() const { return zero_sum_; }

  // Flat index of a joint pure action.
  std::size_t Index(std::span<const int> joint) const;
  // Inverse of Index.
  std::vector<int> Unflatten(std::size_t index) const;

  double Cost(int player, std::span<const int> joint) const {
    return costs(player)[Index(joint)];
  }

  friend bool operator==(const TensorGame& a, const TensorGame& b) {
    return a.actions_ == b.actions_ && a.costs_ == b.costs_;
  }

 private:
  std::vector<int> actions_;
  std::vector<std::vector<double>> costs_;
  std::size_t joint_ = 1;
  bool zero_sum_ = false;
};

// Euclidean projection onto the probability simplex (sort and threshold).
MixedStrategy SimplexProject(std::span<const double> v);

// Throws kInvalidInput unless the profile has one strategy per player with
// matching action counts.
void CheckProfile(const TensorGame& game, const StrategyProfile& x);

// F_j(x) = sum_s f_j(s) prod_i x_{i,s_i}, by contracting one player at a time.
double ExpectedCost(const TensorGame& game, const StrategyProfile& x, int player);

// Coefficients c with F_j(y_j, x_{-j}) = c . y_j; c_k is the cost of the pure
// deviation to action k.
std::vector<double> OwnGradient(const TensorGame& game, const StrategyProfile& x,
                                int player);

struct BestResponse {
  double value;
  int action;  // lowest index among ties
};

BestResponse ComputeBestResponse(const TensorGame& game, const StrategyProfile& x,
                                 int player);

// Sum over players of (current cost - best response cost). Zero exactly at
// Nash equilibria.
double NashGap(const TensorGame& game, const StrategyProfile& x);

// Profile in which every player mixes uniformly.
StrategyProfile UniformProfile(const TensorGame& game);

}  // namespace monoflow

#endif  // MONOFLOW_GAME_CORE_HPP_
