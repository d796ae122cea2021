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

#ifndef MONOFLOW_MONOTONICITY_HPP_
#define MONOFLOW_MONOTONICITY_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "monoflow/game_core.hpp"
#include "monoflow/meanfield.hpp"

namespace monoflow {

// A sampled verdict is evidence, not a proof: it only says no sampled pair
// violated the inequality by more than tol.
enum class Verdict { kCertifiedExhaustive, kCertifiedSampled, kViolated };

std::string_view VerdictName(Verdict v);

struct MonotonicityReport {
  Verdict verdict = Verdict::kCertifiedSampled;
  // Smallest (lhs - rhs) over the tested pairs.
  double worst_margin = 0.0;
  // Pure check: the joint actions (s, t) attaining worst_margin.
  std::vector<int> witness_s;
  std::vector<int> witness_t;
  // Sampled checks: the profiles (x, y) attaining worst_margin. Mean-field
  // reports hold one distribution per profile.
  StrategyProfile witness_x;
  StrategyProfile witness_y;
  std::uint64_t pairs_tested = 0;
  std::uint64_t seed = 0;
};

constexpr std::uint64_t kDefaultPairCap = 1'000'000;
constexpr std::uint64_t kDefaultSamples = 10'000;
constexpr double kDefaultMonotoneTol = 1e-9;

// Margin of the pure inequality at joint actions (s, t):
//   sum_j [f_j(s) + f_j(t)] - sum_j [f_j(s_j, t_-j) + f_j(t_j, s_-j)].
double PureMargin(const TensorGame& game, std::span<const int> s, std::span<const int> t);

// Share of PureMargin contributed by one player.
double PurePlayerMargin(const TensorGame& game, std::span<const int> s,
                        std::span<const int> t, int player);

// Exhaustive over all ordered pairs when (prod m_i)^2 <= cap, otherwise cap
// uniformly sampled pairs.
MonotonicityReport PureMonotonicityCheck(const TensorGame& game,
                                         std::uint64_t cap = kDefaultPairCap,
                                         double tol = kDefaultMonotoneTol,
                                         std::uint64_t seed = 0);

// sum_j (x_j - y_j) . (G_j(x) - G_j(y)) with G_j = OwnGradient.
double VariationalMargin(const TensorGame& game, const StrategyProfile& x,
                         const StrategyProfile& y);

// Samples profile pairs from per-player Dirichlet(1, ..., 1).
MonotonicityReport VariationalMonotonicityCheck(const TensorGame& game,
                                                std::uint64_t n_samples = kDefaultSamples,
                                                double tol = kDefaultMonotoneTol,
                                                std::uint64_t seed = 0);

// (g(mu) - g(nu)) . (mu - nu).
double MeanFieldMargin(const MeanFieldCost& cost, const MixedStrategy& mu,
                       const MixedStrategy& nu);

MonotonicityReport MeanFieldMonotonicityCheck(const MeanFieldCost& cost,
                                              std::uint64_t n_samples = kDefaultSamples,
                                              double tol = kDefaultMonotoneTol,
                                              std::uint64_t seed = 0);

}  // namespace monoflow

#endif  // MONOFLOW_MONOTONICITY_HPP_
