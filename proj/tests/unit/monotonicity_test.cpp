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
#include <vector>

#include "monoflow/analytic_oracle.hpp"
#include "monoflow/meanfield.hpp"
#include "monoflow/monotonicity.hpp"
#include "test_support.hpp"

namespace monoflow {
namespace {

// Sum over players of f_j(s) + f_j(t) - f_j(t_j, s_-j) - f_j(s_j, t_-j), for
// two-player 2x2 games, written out by hand.
double PureMargin2x2(const TensorGame& g, int s1, int s2, int t1, int t2) {
  auto f = [&](int j, int a, int b) { return g.costs(j)[static_cast<std::size_t>(2 * a + b)]; };
  const double p1 = f(0, s1, s2) + f(0, t1, t2) - f(0, t1, s2) - f(0, s1, t2);
  const double p2 = f(1, s1, s2) + f(1, t1, t2) - f(1, s1, t2) - f(1, t1, s2);
  return p1 + p2;
}

TEST_CASE("appendix game is certified exhaustively") {
  const TensorGame g = oracle::AppendixGame();
  const auto r = PureMonotonicityCheck(g);
  CHECK(r.verdict == Verdict::kCertifiedExhaustive);
  CHECK(r.worst_margin == 0.0);
  CHECK(r.pairs_tested == 16);
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto v = VariationalMonotonicityCheck(g, 1000, kDefaultMonotoneTol, seed);
    CHECK(v.verdict == Verdict::kCertifiedSampled);
    CHECK(v.worst_margin >= -1e-12);
    CHECK(v.seed == seed);
  }
}

TEST_CASE("coordination game is flagged with its witness") {
  const TensorGame g = testing::CoordinationGame();
  const auto r = PureMonotonicityCheck(g);
  CHECK(r.verdict == Verdict::kViolated);
  CHECK(r.witness_s == std::vector<int>{0, 0});
  CHECK(r.witness_t == std::vector<int>{1, 1});
  // Brute-force minimum over all 16 pairs.
  double oracle = INFINITY;
  for (int a = 0; a < 16; ++a)
    oracle = std::min(oracle, PureMargin2x2(g, a >> 3 & 1, a >> 2 & 1, a >> 1 & 1, a & 1));
  CHECK(oracle == -4.0);
  CHECK(r.worst_margin == -4.0);
  // Each player contributes -2 at the witness pair.
  CHECK(PurePlayerMargin(g, r.witness_s, r.witness_t, 0) == -2.0);
  CHECK(PurePlayerMargin(g, r.witness_s, r.witness_t, 1) == -2.0);
  CHECK(PureMargin(g, r.witness_s, r.witness_t) == r.worst_margin);

  const auto v = VariationalMonotonicityCheck(g, 100, kDefaultMonotoneTol, 7);
  CHECK(v.verdict == Verdict::kViolated);
  CHECK(std::abs(VariationalMargin(g, v.witness_x, v.witness_y) - v.worst_margin) <= 1e-12);
  // The pure witness seen as mixed profiles gives the same margin.
  const StrategyProfile xs = {MixedStrategy::Pure(2, 0), MixedStrategy::Pure(2, 0)};
  const StrategyProfile xt = {MixedStrategy::Pure(2, 1), MixedStrategy::Pure(2, 1)};
  CHECK(VariationalMargin(g, xs, xt) == doctest::Approx(-4.0));
}

TEST_CASE("single-player games are always monotone") {
  Rng rng(2);
  const TensorGame g = testing::RandomGame(rng, {5});
  const auto r = PureMonotonicityCheck(g);
  CHECK(r.verdict == Verdict::kCertifiedExhaustive);
  CHECK(r.worst_margin == 0.0);
}

TEST_CASE("equal profiles contribute zero") {
  Rng rng(4);
  const TensorGame g = testing::RandomGame(rng, {3, 2, 2});
  const auto x = testing::RandomProfile(rng, g);
  CHECK(VariationalMargin(g, x, x) == 0.0);
}

TEST_CASE("zero-sum games pass both checks") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int m1 = 1 + static_cast<int>(rng.Below(5));
    const int m2 = 1 + static_cast<int>(rng.Below(5));
    const TensorGame g = testing::RandomZeroSum(rng, m1, m2, -10.0, 10.0);
    const auto p = PureMonotonicityCheck(g, kDefaultPairCap, kDefaultMonotoneTol, trial);
    const auto v = VariationalMonotonicityCheck(g, 500, kDefaultMonotoneTol, trial);
    CHECK(p.worst_margin >= -1e-12);
    CHECK(v.worst_margin >= -1e-12);
    CHECK(p.verdict == Verdict::kCertifiedExhaustive);
    CHECK(v.verdict == Verdict::kCertifiedSampled);
  }
}

TEST_CASE("witnesses reproduce the reported margin") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const TensorGame g = testing::RandomGame(rng, {2, 3, 2});
    const auto p = PureMonotonicityCheck(g, kDefaultPairCap, kDefaultMonotoneTol, trial);
    CHECK(std::abs(PureMargin(g, p.witness_s, p.witness_t) - p.worst_margin) <= 1e-12);
    CHECK((p.verdict == Verdict::kViolated) == (p.worst_margin < -kDefaultMonotoneTol));
    const auto v = VariationalMonotonicityCheck(g, 200, kDefaultMonotoneTol, trial);
    CHECK(std::abs(VariationalMargin(g, v.witness_x, v.witness_y) - v.worst_margin) <= 1e-12);
    CHECK((v.verdict == Verdict::kViolated) == (v.worst_margin < -kDefaultMonotoneTol));
  }
}

TEST_CASE("sampled pure check above the cap") {
  Rng rng(13);
  const TensorGame g = testing::RandomZeroSum(rng, 4, 4);
  const auto a = PureMonotonicityCheck(g, 50, kDefaultMonotoneTol, 3);
  CHECK(a.verdict == Verdict::kCertifiedSampled);
  CHECK(a.pairs_tested == 50);
  const TensorGame h = testing::RandomGame(rng, {4, 4, 4});
  const auto b1 = PureMonotonicityCheck(h, 1000, kDefaultMonotoneTol, 3);
  const auto b2 = PureMonotonicityCheck(h, 1000, kDefaultMonotoneTol, 3);
  CHECK(b1.worst_margin == b2.worst_margin);
  CHECK(b1.witness_s == b2.witness_s);
  CHECK(b1.witness_t == b2.witness_t);
}

TEST_CASE("reports are deterministic in the seed") {
  Rng rng(14);
  const TensorGame g = testing::RandomGame(rng, {3, 3});
  const auto a = VariationalMonotonicityCheck(g, 300, kDefaultMonotoneTol, 42);
  const auto b = VariationalMonotonicityCheck(g, 300, kDefaultMonotoneTol, 42);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.witness_x == b.witness_x);
  CHECK(a.witness_y == b.witness_y);
}

TEST_CASE("pure certification rules out sampled violations") {
  // Zero-sum core plus per-player own-action terms: certified by the pure test.
  Rng rng(15);
  int certified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    TensorGame base = testing::RandomZeroSum(rng, 3, 2);
    auto c0 = base.costs(0);
    auto c1 = base.costs(1);
    const double own1[] = {rng.Uniform(), rng.Uniform(), rng.Uniform()};
    const double own2[] = {rng.Uniform(), rng.Uniform()};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b) {
        c0[static_cast<std::size_t>(2 * a + b)] += own1[a];
        c1[static_cast<std::size_t>(2 * a + b)] += own2[b];
      }
    const TensorGame g({3, 2}, {c0, c1});
    const auto p = PureMonotonicityCheck(g);
    if (p.verdict != Verdict::kCertifiedExhaustive) continue;
    ++certified;
    const auto v = VariationalMonotonicityCheck(g, 300, 1e-10, trial);
    CHECK(v.verdict != Verdict::kViolated);
  }
  CHECK(certified == 40);
}

TEST_CASE("mean-field monotonicity examples") {
  const MeanFieldCost phi_only({0, 1, 2}, {}, Congestion::None());
  const auto a = MeanFieldMonotonicityCheck(phi_only, 500, kDefaultMonotoneTol, 1);
  CHECK(a.verdict == Verdict::kCertifiedSampled);
  CHECK(a.worst_margin == 0.0);

  Rng rng(16);
  const MeanFieldCost identity_kernel({0, 0, 0}, {1, 0, 0, 0, 1, 0, 0, 0, 1}, Congestion::None(), true);
  const MeanFieldCost congestion({0, 0, 0}, {}, Congestion::Identity(), true);
  for (const auto* cost : {&identity_kernel, &congestion}) {
    const auto r = MeanFieldMonotonicityCheck(*cost, 500, kDefaultMonotoneTol, 1);
    CHECK(r.verdict == Verdict::kCertifiedSampled);
    CHECK(r.worst_margin >= 0.0);
    for (int trial = 0; trial < 50; ++trial) {
      const auto mu = testing::RandomStrategy(rng, 3);
      const auto nu = testing::RandomStrategy(rng, 3);
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) d2 += (mu[k] - nu[k]) * (mu[k] - nu[k]);
      CHECK(std::abs(MeanFieldMargin(*cost, mu, nu) - d2) <= 1e-14);
    }
  }
}

TEST_CASE("psd kernels give nonnegative margins") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(rng.Below(4));
    // K = A^T A is positive semidefinite.
    std::vector<double> a(static_cast<std::size_t>(m * m));
    for (double& e : a) e = 2.0 * rng.Uniform() - 1.0;
    std::vector<double> k(a.size(), 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
          k[static_cast<std::size_t>(i * m + j)] +=
              a[static_cast<std::size_t>(l * m + i)] * a[static_cast<std::size_t>(l * m + j)];
    // Symmetrize away rounding so the flag check passes.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        k[static_cast<std::size_t>(i * m + j)] = k[static_cast<std::size_t>(j * m + i)];
    const MeanFieldCost cost(std::vector<double>(static_cast<std::size_t>(m), 0.0), k,
                             Congestion::Power(1.5), true);
    CHECK(KernelMinEigenvalue(cost) >= -1e-10);
    const auto r = MeanFieldMonotonicityCheck(cost, 300, kDefaultMonotoneTol, trial);
    CHECK(r.worst_margin >= -1e-10);
    CHECK(r.verdict == Verdict::kCertifiedSampled);
  }
}

TEST_CASE("indefinite kernel is flagged") {
  const MeanFieldCost cost({0, 0}, {-1, 0, 0, -1}, Congestion::None(), true);
  CHECK(KernelMinEigenvalue(cost) == doctest::Approx(-1.0));
  const auto r = MeanFieldMonotonicityCheck(cost, 200, kDefaultMonotoneTol, 1);
  CHECK(r.verdict == Verdict::kViolated);
  CHECK(std::abs(MeanFieldMargin(cost, r.witness_x[0], r.witness_y[0]) - r.worst_margin) <= 1e-12);
}

}  // namespace
}  // namespace monoflow
