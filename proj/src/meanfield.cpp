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

#include "monoflow/meanfield.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "monoflow/error.hpp"
#include "monoflow/rng.hpp"

namespace monoflow {
namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr std::size_t kExhaustiveSymmetryLimit = 10000;
constexpr int kSymmetrySamples = 100;
constexpr std::uint64_t kSymmetrySeed = 0x5eed5eedULL;

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

StrategyProfile Replicate(const MixedStrategy& mu, int n) {
  return StrategyProfile(static_cast<std::size_t>(n), mu);
}

// Exact check: for every own action a and multiset M of opponent actions, the
// sum of f_i over arrangements of M must agree across players i.
bool SymmetricExhaustive(const TensorGame& g) {
  const int n = g.num_players();
  std::map<std::vector<int>, std::vector<double>> sums;
  for (std::size_t idx = 0; idx < g.num_joint_actions(); ++idx) {
    const std::vector<int> joint = g.Unflatten(idx);
    for (int i = 0; i < n; ++i) {
      std::vector<int> key;
      key.reserve(joint.size());
      key.push_back(joint[static_cast<std::size_t>(i)]);
      for (int k = 0; k < n; ++k)
        if (k != i) key.push_back(joint[static_cast<std::size_t>(k)]);
      std::sort(key.begin() + 1, key.end());
      auto& bucket = sums[key];
      if (bucket.empty()) bucket.assign(static_cast<std::size_t>(n), 0.0);
      bucket[static_cast<std::size_t>(i)] += g.costs(i)[idx];
    }
  }
  for (const auto& [key, bucket] : sums)
    for (double s : bucket)
      if (std::abs(s - bucket[0]) > kSymmetryTol * std::max(1.0, std::abs(bucket[0])))
        return false;
  return true;
}

bool SymmetricSampled(const TensorGame& g) {
  Rng rng(kSymmetrySeed);
  const int n = g.num_players();
  const int m = g.actions(0);
  for (int trial = 0; trial < kSymmetrySamples; ++trial) {
    const MixedStrategy mu(rng.Dirichlet(m));
    const MixedStrategy nu(rng.Dirichlet(m));
    const int i = static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
    const int j = static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
    StrategyProfile xi = Replicate(mu, n);
    xi[static_cast<std::size_t>(i)] = nu;
    StrategyProfile xj = Replicate(mu, n);
    xj[static_cast<std::size_t>(j)] = nu;
    if (std::abs(ExpectedCost(g, xi, i) - ExpectedCost(g, xj, j)) > kSymmetryTol)
      return false;
  }
  return true;
}

}  // namespace

double Congestion::operator()(double rho) const {
  switch (kind) {
    case Kind::kNone:
      return 0.0;
    case Kind::kIdentity:
      return rho;
    case Kind::kPower:
      return std::pow(std::max(rho, 0.0), exponent);
    case Kind::kLog1p:
      return std::log1p(rho);
  }
  return 0.0;
}

std::string Congestion::Name() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kIdentity:
      return "identity";
    case Kind::kPower:
      return "power";
    case Kind::kLog1p:
      return "log1p";
  }
  return "none";
}

Congestion::Kind ParseCongestionKind(std::string_view name) {
  if (name == "none") return Congestion::Kind::kNone;
  if (name == "identity") return Congestion::Kind::kIdentity;
  if (name == "power") return Congestion::Kind::kPower;
  if (name == "log1p") return Congestion::Kind::kLog1p;
  Fail(ErrorCode::kInvalidInput, "unknown congestion function '" + std::string(name) + "'");
}

MeanFieldCost::MeanFieldCost(std::vector<double> phi, std::vector<double> kernel,
                             Congestion congestion, bool monotone_by_construction)
    : phi_(std::move(phi)),
      kernel_(std::move(kernel)),
      congestion_(congestion),
      monotone_(monotone_by_construction) {
  const std::size_t m = phi_.size();
  Require(m >= 1, "a mean-field cost needs at least one state");
  for (double p : phi_) Require(std::isfinite(p), "phi entry is not finite");
  Require(kernel_.empty() || kernel_.size() == m * m,
          "kernel has " + std::to_string(kernel_.size()) + " entries, expected " +
              std::to_string(m * m));
  for (double k : kernel_) Require(std::isfinite(k), "kernel entry is not finite");
  if (monotone_ && !kernel_.empty()) {
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < s; ++t)
        Require(std::abs(kernel_[s * m + t] - kernel_[t * m + s]) <= 1e-12,
                "kernel is not symmetric");
  }
  if (congestion_.kind == Congestion::Kind::kPower)
    Require(std::isfinite(congestion_.exponent) && congestion_.exponent > 0.0,
            "power congestion needs a positive exponent");
  double prev = congestion_(0.0);
  Require(std::isfinite(prev), "congestion function is not finite at 0");
  for (int k = 1; k <= 1000; ++k) {
    const double v = congestion_(k * 1e-3);
    Require(std::isfinite(v) && v >= prev, "congestion function is not nondecreasing on [0,1]");
    prev = v;
  }
}

std::vector<double> MeanFieldCostVector(const MeanFieldCost& cost, const MixedStrategy& mu) {
  const int m = cost.states();
  Require(mu.size() == m, "distribution has " + std::to_string(mu.size()) +
                              " states, cost has " + std::to_string(m));
  std::vector<double> g = cost.phi();
  if (cost.has_kernel()) {
    const auto& k = cost.kernel();
    for (int s = 0; s < m; ++s)
      g[static_cast<std::size_t>(s)] +=
          Dot(std::span(k).subspan(static_cast<std::size_t>(s * m), static_cast<std::size_t>(m)),
              mu.probs());
  }
  if (cost.congestion().kind != Congestion::Kind::kNone)
    for (int s = 0; s < m; ++s) g[static_cast<std::size_t>(s)] += cost.congestion()(mu[s]);
  for (double v : g) Require(std::isfinite(v), "mean-field cost is not finite");
  return g;
}

double MeanFieldExploitability(const MeanFieldCost& cost, const MixedStrategy& mu) {
  const auto g = MeanFieldCostVector(cost, mu);
  return Dot(g, mu.probs()) - *std::min_element(g.begin(), g.end());
}

FlowResult MeanFieldIntegrate(const MeanFieldCost& cost, const MixedStrategy& mu0,
                              const FlowConfig& cfg) {
  Require(mu0.size() == cost.states(), "initial distribution has the wrong size");
  FlowProblem p;
  p.field = [&cost](const StrategyProfile& x) {
    return std::vector<std::vector<double>>{MeanFieldCostVector(cost, x.at(0))};
  };
  p.gap = [&cost](const StrategyProfile& x) { return MeanFieldExploitability(cost, x.at(0)); };
  return Integrate(p, StrategyProfile{mu0}, cfg);
}

double KernelMinEigenvalue(const MeanFieldCost& cost) {
  if (!cost.has_kernel()) return 0.0;
  const int m = cost.states();
  Eigen::MatrixXd k(m, m);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) k(s, t) = cost.kernel()[static_cast<std::size_t>(s * m + t)];
  const Eigen::MatrixXd sym = 0.5 * (k + k.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

SymmetricGameView::SymmetricGameView(TensorGame base) : base_(std::move(base)) {
  const int m = base_.actions(0);
  for (int a : base_.action_counts())
    Require(a == m, "a symmetric game needs equal action counts");
  exhaustive_ = base_.num_joint_actions() <= kExhaustiveSymmetryLimit;
  const bool ok = exhaustive_ ? SymmetricExhaustive(base_) : SymmetricSampled(base_);
  Require(ok, "game costs are not symmetric");
}

std::vector<double> SymmetricField(const SymmetricGameView& view, const MixedStrategy& mu) {
  Require(mu.size() == view.actions(), "distribution has the wrong size");
  return OwnGradient(view.base(), Replicate(mu, view.base().num_players()), 0);
}

double SymmetricExploitability(const SymmetricGameView& view, const MixedStrategy& mu) {
  const auto g = SymmetricField(view, mu);
  return Dot(g, mu.probs()) - *std::min_element(g.begin(), g.end());
}

FlowResult SymmetricFlow(const SymmetricGameView& view, const MixedStrategy& mu0,
                         const FlowConfig& cfg) {
  Require(mu0.size() == view.actions(), "initial distribution has the wrong size");
  FlowProblem p;
  p.field = [&view](const StrategyProfile& x) {
    return std::vector<std::vector<double>>{SymmetricField(view, x.at(0))};
  };
  p.gap = [&view](const StrategyProfile& x) { return SymmetricExploitability(view, x.at(0)); };
  return Integrate(p, StrategyProfile{mu0}, cfg);
}

}  // namespace monoflow
