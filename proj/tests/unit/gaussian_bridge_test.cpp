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

#include "monoflow/error.hpp"
#include "monoflow/gaussian_bridge.hpp"
#include "monoflow/rng.hpp"

namespace monoflow::gaussian {
namespace {

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TEST_CASE("rng streams are fixed") {
  // First outputs of std::mt19937_64 seeded with 5489 (the standard default).
  Rng rng(5489);
  CHECK(rng.NextWord() == 14514284786278117030ull);
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.Normal() == b.Normal());
  Rng c(8);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(c.Below(3) < 3);
  }
  for (int i = 0; i < 100; ++i) {
    const auto d = c.Dirichlet(4);
    double s = 0.0;
    for (double p : d) s += p;
    CHECK(std::abs(s - 1.0) <= 1e-15);
  }
}

TEST_CASE("sample table") {
  const auto t = SampleGamma(3, 1'000'000, 1);
  CHECK(t.rows() == 1'000'000);
  CHECK(t.cols() == 3);
  const auto again = SampleGamma(3, 1'000'000, 1);
  CHECK(std::equal(t.data().begin(), t.data().end(), again.data().begin()));
  for (std::size_t k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) mean += t.row(i)[k];
    mean /= static_cast<double>(t.rows());
    double var = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) var += (t.row(i)[k] - mean) * (t.row(i)[k] - mean);
    var /= static_cast<double>(t.rows() - 1);
    CHECK(std::abs(mean) <= 0.004);
    CHECK(std::abs(var - 1.0) <= 0.006);
  }
  CHECK_THROWS_AS(SampleGamma(0, 10, 1), Error);
  CHECK_THROWS_AS(SampleTable(2, 2, {1, 2, 3}), Error);
}

TEST_CASE("inner product examples") {
  const auto t = SampleGamma(2, 1'000'000, 1);
  const std::vector<double> d1 = {1, 0};
  const std::vector<double> d2 = {0, 1};
  const std::vector<double> zero = {0, 0};
  CHECK(std::abs(EstimateInner(d1, d1, t) - 1.0) <= 0.006);
  CHECK(std::abs(EstimateInner(d1, d2, t)) <= 0.004);
  CHECK(EstimateInner(zero, d2, t) == 0.0);
  CHECK(InnerTolerance(d1, d1, 1'000'000) == doctest::Approx(4.0 * std::sqrt(2e-6)));
  CHECK_THROWS_AS(EstimateInner(std::vector<double>{1, 2, 3}, d1, t), Error);
}

TEST_CASE("inner estimates stay within 4 sigma across seeds") {
  Rng coeffs(99);
  int misses = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::vector<double> mu(4), nu(4);
    for (double& v : mu) v = 2.0 * coeffs.Uniform() - 1.0;
    for (double& v : nu) v = 2.0 * coeffs.Uniform() - 1.0;
    const auto t = SampleGamma(4, 100'000, seed);
    if (std::abs(EstimateInner(mu, nu, t) - Dot(mu, nu)) > InnerTolerance(mu, nu, 100'000))
      ++misses;
  }
  // P(|Z| > 4) is about 6e-5 per seed.
  CHECK(misses == 0);
}

TEST_CASE("pushforward variance") {
  const auto t = SampleGamma(2, 1'000'000, 1);
  const std::vector<double> c = {3, 4};
  const double v = PushforwardVariance(c, t);
  CHECK(std::abs(v - 25.0) <= 0.15);
  CHECK(PushforwardTolerance(c, 1'000'000) <= 0.15);
  CHECK(std::abs(PushforwardVariance(std::vector<double>{1, 0}, t) - 1.0) <= 0.006);
  // The same samples under 2c give exactly four times the estimate up to rounding.
  const double v2 = PushforwardVariance(std::vector<double>{6, 8}, t);
  CHECK(v2 / v >= 3.9);
  CHECK(v2 / v <= 4.1);
  CHECK(std::abs(v2 - 4.0 * v) <= 1e-9 * v2);
  // Independent tables also respect the scaling within the combined tolerance.
  const double w2 = PushforwardVariance(std::vector<double>{6, 8}, SampleGamma(2, 1'000'000, 2));
  CHECK(w2 / v >= 3.9);
  CHECK(w2 / v <= 4.1);
  try {
    PushforwardVariance(std::vector<double>{0, 0}, t);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
  }
}

TEST_CASE("jay map") {
  CHECK(JayMap(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 2, 3});
  CHECK(JayMap(std::vector<double>{0, 0}) == std::vector<double>{0, 0});
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> mu(5), nu(5);
    for (double& v : mu) v = rng.Normal();
    for (double& v : nu) v = rng.Normal();
    CHECK(Pairing(mu, JayMap(nu)) == Dot(mu, nu));
  }
  // The Monte Carlo form of J agrees coordinatewise within 4 sigma.
  const std::vector<double> nu = {0.5, -1.0, 2.0};
  const auto t = SampleGamma(3, 1'000'000, 1);
  const auto est = EstimateJay(nu, t);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(est[k] - nu[k]) <= JayTolerance(nu, k, 1'000'000));
}

}  // namespace
}  // namespace monoflow::gaussian
