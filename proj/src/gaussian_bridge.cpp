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

#include "monoflow/gaussian_bridge.hpp"

#include <cmath>
#include <string>

#include "monoflow/error.hpp"
#include "monoflow/rng.hpp"

namespace monoflow::gaussian {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckDims(std::span<const double> v, const SampleTable& samples, const char* what) {
  Require(v.size() == samples.cols(), std::string(what) + " has " +
                                          std::to_string(v.size()) + " coefficients, table has " +
                                          std::to_string(samples.cols()) + " columns");
  for (double e : v) Require(std::isfinite(e), std::string(what) + " is not finite");
}

}  // namespace

SampleTable::SampleTable(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  Require(rows_ >= 1 && cols_ >= 1, "sample table must be nonempty");
  Require(data_.size() == rows_ * cols_, "sample table data has the wrong size");
}

SampleTable SampleGamma(int m, std::size_t n, std::uint64_t seed) {
  Require(m >= 1 && n >= 1, "sample table must be nonempty");
  Rng rng(seed);
  std::vector<double> data(n * static_cast<std::size_t>(m));
  for (double& x : data) x = rng.Normal();
  return SampleTable(n, static_cast<std::size_t>(m), std::move(data));
}

double EstimateInner(std::span<const double> mu, std::span<const double> nu,
                     const SampleTable& samples) {
  CheckDims(mu, samples, "mu");
  CheckDims(nu, samples, "nu");
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto x = samples.row(i);
    acc += Dot(mu, x) * Dot(nu, x);
  }
  return acc / static_cast<double>(samples.rows());
}

double InnerTolerance(std::span<const double> mu, std::span<const double> nu, std::size_t n) {
  const double c = Dot(mu, nu);
  const double var = Dot(mu, mu) * Dot(nu, nu) + c * c;
  return 4.0 * std::sqrt(var / static_cast<double>(n));
}

double PushforwardVariance(std::span<const double> c, const SampleTable& samples) {
  CheckDims(c, samples, "c");
  if (Dot(c, c) == 0.0)
    Fail(ErrorCode::kDegenerate, "pushforward by the zero functional is degenerate");
  Require(samples.rows() >= 2, "variance needs at least two samples");
  // Welford's update.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const double y = Dot(c, samples.row(i));
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  return m2 / static_cast<double>(samples.rows() - 1);
}

double PushforwardTolerance(std::span<const double> c, std::size_t n) {
  const double c2 = Dot(c, c);
  return 4.0 * std::sqrt(2.0 * c2 * c2 / static_cast<double>(n));
}

std::vector<double> JayMap(std::span<const double> nu) { return {nu.begin(), nu.end()}; }

double Pairing(std::span<const double> mu, std::span<const double> f) {
  Require(mu.size() == f.size(), "measure and function have different dimensions");
  return Dot(mu, f);
}

std::vector<double> EstimateJay(std::span<const double> nu, const SampleTable& samples) {
  CheckDims(nu, samples, "nu");
  std::vector<double> acc(samples.cols(), 0.0);
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto x = samples.row(i);
    const double w = Dot(nu, x);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += x[k] * w;
  }
  for (double& a : acc) a /= static_cast<double>(samples.rows());
  return acc;
}

double JayTolerance(std::span<const double> nu, std::size_t k, std::size_t n) {
  Require(k < nu.size(), "coordinate out of range");
  const double var = Dot(nu, nu) + nu[k] * nu[k];
  return 4.0 * std::sqrt(var / static_cast<double>(n));
}

}  // namespace monoflow::gaussian
