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

#ifndef MONOFLOW_MEANFIELD_HPP_
#define MONOFLOW_MEANFIELD_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "monoflow/flow_engine.hpp"
#include "monoflow/game_core.hpp"

namespace monoflow {

// Increasing congestion functions psi, applied to the density of a state with
// respect to the counting measure (i.e. to mu_s itself).
struct Congestion {
  enum class Kind { kNone, kIdentity, kPower, kLog1p };
  Kind kind = Kind::kNone;
  double exponent = 1.0;  // kPower only; must be positive

  static Congestion None() { return {}; }
  static Congestion Identity() { return {Kind::kIdentity, 1.0}; }
  static Congestion Power(double p) { return {Kind::kPower, p}; }
  static Congestion Log1p() { return {Kind::kLog1p, 1.0}; }

  double operator()(double rho) const;
  std::string Name() const;
};

Congestion::Kind ParseCongestionKind(std::string_view name);

// f(s, mu) = phi(s) + (K mu)(s) + psi(mu_s) on a finite state set.
class MeanFieldCost {
 public:
  // kernel is m*m row-major, or empty for K = 0. With monotone_by_construction
  // the kernel must also be symmetric.
  MeanFieldCost(std::vector<double> phi, std::vector<double> kernel,
                Congestion congestion, bool monotone_by_construction = false);

  int states() const { return static_cast<int>(phi_.size()); }
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& kernel() const { return kernel_; }
  bool has_kernel() const { return !kernel_.empty(); }
  const Congestion& congestion() const { return congestion_; }
  bool monotone_by_construction() const { return monotone_; }

 private:
  std::vector<double> phi_;
  std::vector<double> kernel_;
  Congestion congestion_;
  bool monotone_;
};

// g(mu) with g_s(mu) = phi(s) + (K mu)(s) + psi(mu_s).
std::vector<double> MeanFieldCostVector(const MeanFieldCost& cost, const MixedStrategy& mu);

// mu . g(mu) - min_s g_s(mu); zero iff mu is a mean field equilibrium.
double MeanFieldExploitability(const MeanFieldCost& cost, const MixedStrategy& mu);

// Single-population flow driven by g; gaps are the exploitability of the
// Cesàro mean. Profiles in the result have exactly one entry.
FlowResult MeanFieldIntegrate(const MeanFieldCost& cost, const MixedStrategy& mu0,
                              const FlowConfig& cfg);

// Smallest eigenvalue of the symmetric part of the kernel;
// zero when there is no kernel.
double KernelMinEigenvalue(const MeanFieldCost& cost);

// A game whose players share one action set and whose costs are symmetric:
// F_i with nu in slot i and mu elsewhere does not depend on i.
class SymmetricGameView {
 public:
  explicit SymmetricGameView(TensorGame base);

  const TensorGame& base() const { return base_; }
  int actions() const { return base_.actions(0); }
  // True when symmetry was verified over all joint actions rather than sampled.
  bool exhaustive() const { return exhaustive_; }

 private:
  TensorGame base_;
  bool exhaustive_ = false;
};

// Field mu -> OwnGradient(base, (mu, ..., mu), player 1).
std::vector<double> SymmetricField(const SymmetricGameView& view, const MixedStrategy& mu);

// F_1(mu, ..., mu) - min_k SymmetricField(mu)_k.
double SymmetricExploitability(const SymmetricGameView& view, const MixedStrategy& mu);

FlowResult SymmetricFlow(const SymmetricGameView& view, const MixedStrategy& mu0,
                         const FlowConfig& cfg);

}  // namespace monoflow

#endif  // MONOFLOW_MEANFIELD_HPP_
