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

#include "monoflow/monotonicity.hpp"

#include <limits>

#include "monoflow/error.hpp"
#include "monoflow/rng.hpp"

namespace monoflow {
namespace {

StrategyProfile SampleProfile(const TensorGame& game, Rng& rng) {
  StrategyProfile x;
  x.reserve(static_cast<std::size_t>(game.num_players()));
  for (int m : game.action_counts()) x.emplace_back(rng.Dirichlet(m));
  return x;
}

void Finish(MonotonicityReport& r, double tol, bool exhaustive) {
  if (r.worst_margin < -tol) {
    r.verdict = Verdict::kViolated;
  } else {
    r.verdict = exhaustive ? Verdict::kCertifiedExhaustive : Verdict::kCertifiedSampled;
  }
}

}  // namespace

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedExhaustive:
      return "certified-exhaustive";
    case Verdict::kCertifiedSampled:
      return "certified-sampled";
    case Verdict::kViolated:
      return "violated";
  }
  return "unknown";
}

double PurePlayerMargin(const TensorGame& game, std::span<const int> s,
                        std::span<const int> t, int player) {
  Require(player >= 0 && player < game.num_players(), "player index out of range");
  const auto j = static_cast<std::size_t>(player);
  std::vector<int> s_dev(t.begin(), t.end());  // (s_j, t_-j)
  s_dev[j] = s[j];
  std::vector<int> t_dev(s.begin(), s.end());  // (t_j, s_-j)
  t_dev[j] = t[j];
  return (game.Cost(player, s) + game.Cost(player, t)) -
         (game.Cost(player, s_dev) + game.Cost(player, t_dev));
}

double PureMargin(const TensorGame& game, std::span<const int> s, std::span<const int> t) {
  double total = 0.0;
  for (int j = 0; j < game.num_players(); ++j) total += PurePlayerMargin(game, s, t, j);
  return total;
}

MonotonicityReport PureMonotonicityCheck(const TensorGame& game, std::uint64_t cap,
                                         double tol, std::uint64_t seed) {
  Require(cap >= 1, "pair cap must be at least 1");
  Require(tol >= 0.0, "tolerance must be nonnegative");
  MonotonicityReport r;
  r.seed = seed;
  r.worst_margin = std::numeric_limits<double>::infinity();
  const std::uint64_t joint = game.num_joint_actions();
  const bool exhaustive =
      joint <= std::numeric_limits<std::uint32_t>::max() && joint * joint <= cap;

  auto consider = [&](std::uint64_t a, std::uint64_t b) {
    const auto s = game.Unflatten(a);
    const auto t = game.Unflatten(b);
    const double margin = PureMargin(game, s, t);
    ++r.pairs_tested;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.witness_s = s;
      r.witness_t = t;
    }
  };

  if (exhaustive) {
    for (std::uint64_t a = 0; a < joint; ++a)
      for (std::uint64_t b = 0; b < joint; ++b) consider(a, b);
  } else {
    Rng rng(seed);
    for (std::uint64_t k = 0; k < cap; ++k) {
      const std::uint64_t a = rng.Below(joint);
      const std::uint64_t b = rng.Below(joint);
      consider(a, b);
    }
  }
  Finish(r, tol, exhaustive);
  return r;
}

double VariationalMargin(const TensorGame& game, const StrategyProfile& x,
                         const StrategyProfile& y) {
  CheckProfile(game, x);
  CheckProfile(game, y);
  double total = 0.0;
  for (int j = 0; j < game.num_players(); ++j) {
    const auto gx = OwnGradient(game, x, j);
    const auto gy = OwnGradient(game, y, j);
    const auto& xj = x[static_cast<std::size_t>(j)];
    const auto& yj = y[static_cast<std::size_t>(j)];
    for (int k = 0; k < xj.size(); ++k)
      total += (xj[k] - yj[k]) * (gx[static_cast<std::size_t>(k)] - gy[static_cast<std::size_t>(k)]);
  }
  return total;
}

MonotonicityReport VariationalMonotonicityCheck(const TensorGame& game,
                                                std::uint64_t n_samples, double tol,
                                                std::uint64_t seed) {
  Require(n_samples >= 1, "need at least one sample");
  Require(tol >= 0.0, "tolerance must be nonnegative");
  MonotonicityReport r;
  r.seed = seed;
  r.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    StrategyProfile x = SampleProfile(game, rng);
    StrategyProfile y = SampleProfile(game, rng);
    const double margin = VariationalMargin(game, x, y);
    ++r.pairs_tested;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.witness_x = std::move(x);
      r.witness_y = std::move(y);
    }
  }
  Finish(r, tol, false);
  return r;
}

double MeanFieldMargin(const MeanFieldCost& cost, const MixedStrategy& mu,
                       const MixedStrategy& nu) {
  const auto gm = MeanFieldCostVector(cost, mu);
  const auto gn = MeanFieldCostVector(cost, nu);
  double total = 0.0;
  for (int s = 0; s < mu.size(); ++s)
    total += (gm[static_cast<std::size_t>(s)] - gn[static_cast<std::size_t>(s)]) * (mu[s] - nu[s]);
  return total;
}

MonotonicityReport MeanFieldMonotonicityCheck(const MeanFieldCost& cost,
                                              std::uint64_t n_samples, double tol,
                                              std::uint64_t seed) {
  Require(n_samples >= 1, "need at least one sample");
  Require(tol >= 0.0, "tolerance must be nonnegative");
  MonotonicityReport r;
  r.seed = seed;
  r.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    MixedStrategy mu(rng.Dirichlet(cost.states()));
    MixedStrategy nu(rng.Dirichlet(cost.states()));
    const double margin = MeanFieldMargin(cost, mu, nu);
    ++r.pairs_tested;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.witness_x = {std::move(mu)};
      r.witness_y = {std::move(nu)};
    }
  }
  Finish(r, tol, false);
  return r;
}

}  // namespace monoflow
