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

#ifndef MONOFLOW_RNG_HPP_
#define MONOFLOW_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace monoflow {

// Portable random source. The integer stream of std::mt19937_64 is fixed by
// the standard; the std distributions are not, so every real-valued draw is
// derived here from raw 64-bit words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextWord() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double UniformOpenZero() { return 1.0 - Uniform(); }

  // Index in [0, n), by rejection so the result is unbiased.
  std::uint64_t Below(std::uint64_t n);

  // Standard normal by the Box-Muller transform; the second variate of each
  // pair is cached and returned by the next call.
  double Normal();

  // Uniform point of the (m-1)-simplex, i.e. Dirichlet(1, ..., 1), from
  // normalized unit exponentials.
  std::vector<double> Dirichlet(int m);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace monoflow

#endif  // MONOFLOW_RNG_HPP_
