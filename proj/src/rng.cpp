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

#include "monoflow/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace monoflow {

std::uint64_t Rng::Below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t w;
  do {
    w = engine_();
  } while (w >= limit);
  return w % n;
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = UniformOpenZero();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<double> Rng::Dirichlet(int m) {
  std::vector<double> out(static_cast<std::size_t>(m));
  double total = 0.0;
  for (double& e : out) {
    e = -std::log(UniformOpenZero());
    total += e;
  }
  if (total <= 0.0) {
    // Every draw was exactly 1.0; fall back to the barycenter.
    for (double& e : out) e = 1.0 / m;
    return out;
  }
  for (double& e : out) e /= total;
  return out;
}

}  // namespace monoflow
