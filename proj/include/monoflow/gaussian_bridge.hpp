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

#ifndef MONOFLOW_GAUSSIAN_BRIDGE_HPP_
#define MONOFLOW_GAUSSIAN_BRIDGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace monoflow::gaussian {

// Monte Carlo checks of the standard Gaussian measure on C(S) for a finite
// S = {s_1, ..., s_m}. A function is identified with its values (x_1, ..., x_m),
// a measure with its coefficients (mu(e_1), ..., mu(e_m)), and the coordinates
// are i.i.d. N(0, 1). Under this measure the L2 inner product of two measures
// is the dot product of their coefficients and J is the coordinate identity.

using MeasureCoeffs = std::vector<double>;

// n x m table of draws, row-major.
class SampleTable {
 public:
  SampleTable(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> row(std::size_t i) const {
    return std::span(data_).subspan(i * cols_, cols_);
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Rows are filled in order from one Rng(seed) stream with Box-Muller normals.
SampleTable SampleGamma(int m, std::size_t n, std::uint64_t seed);

// Sample mean of (mu . x)(nu . x); estimates sum_j mu_j nu_j.
double EstimateInner(std::span<const double> mu, std::span<const double> nu,
                     const SampleTable& samples);

// 4-sigma tolerance for EstimateInner: Var[(mu.x)(nu.x)] = |mu|^2 |nu|^2 + (mu.nu)^2.
double InnerTolerance(std::span<const double> mu, std::span<const double> nu, std::size_t n);

// Unbiased sample variance of c . x; estimates |c|^2. c must be nonzero.
double PushforwardVariance(std::span<const double> c, const SampleTable& samples);

// 4-sigma tolerance for PushforwardVariance: sqrt(2 |c|^4 / n).
double PushforwardTolerance(std::span<const double> c, std::size_t n);

// J applied to sum_j nu_j delta_{s_j}: the function with values nu_j.
std::vector<double> JayMap(std::span<const double> nu);

// <mu, J nu>, the pairing of a measure with a function.
double Pairing(std::span<const double> mu, std::span<const double> f);

// Monte Carlo estimate of the Bochner integral ∫ x (nu . x) dgamma(x), which
// equals JayMap(nu).
std::vector<double> EstimateJay(std::span<const double> nu, const SampleTable& samples);

// 4-sigma tolerance for coordinate k of EstimateJay: Var = |nu|^2 + nu_k^2.
double JayTolerance(std::span<const double> nu, std::size_t k, std::size_t n);

}  // namespace monoflow::gaussian

#endif  // MONOFLOW_GAUSSIAN_BRIDGE_HPP_
