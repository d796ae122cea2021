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

#include "monoflow/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "monoflow/analytic_oracle.hpp"
#include "monoflow/error.hpp"
#include "monoflow/gaussian_bridge.hpp"
#include "monoflow/monotonicity.hpp"
#include "monoflow/rng.hpp"

namespace monoflow::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void ParseFail(const std::string& what) { Fail(ErrorCode::kParse, what); }

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    ParseFail("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(col) + ": " + e.what());
  }
}

void CheckKeys(const json& doc, const std::set<std::string>& allowed) {
  if (!doc.is_object()) ParseFail("document must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!allowed.contains(key)) ParseFail("unknown field '" + key + "'");
}

const json& Field(const json& doc, const std::string& name) {
  const auto it = doc.find(name);
  if (it == doc.end()) ParseFail("missing field '" + name + "'");
  return *it;
}

long long AsInt(const json& v, const std::string& where) {
  if (!v.is_number_integer()) ParseFail("field '" + where + "' must be an integer");
  return v.get<long long>();
}

double AsReal(const json& v, const std::string& where) {
  if (!v.is_number()) ParseFail("field '" + where + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) ParseFail("field '" + where + "' must be finite");
  return d;
}

std::vector<double> AsRealArray(const json& v, const std::string& where) {
  if (!v.is_array()) ParseFail("field '" + where + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(AsReal(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

std::string Join(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += FormatNumber(v[i]);
  }
  return s + ")";
}

std::string FormatProfile(const StrategyProfile& x) {
  std::string s;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) s += " ";
    s += Join(x[j].probs());
  }
  return s;
}

std::string TrajectoryCsv(const FlowResult& r) {
  std::string out = "t,player,coord,state,cesaro\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const std::string t = FormatNumber(r.times[i]);
    for (std::size_t j = 0; j < r.states[i].size(); ++j) {
      for (int k = 0; k < r.states[i][j].size(); ++k) {
        out += t;
        out += ',';
        out += std::to_string(j + 1);
        out += ',';
        out += std::to_string(k + 1);
        out += ',';
        out += FormatNumber(r.states[i][j][k]);
        out += ',';
        out += FormatNumber(r.cesaro[i][j][k]);
        out += '\n';
      }
    }
  }
  return out;
}

std::string GapsCsv(const FlowResult& r) {
  std::string out = "t,gap\n";
  for (std::size_t i = 0; i < r.times.size(); ++i)
    out += FormatNumber(r.times[i]) + "," + FormatNumber(r.gaps[i]) + "\n";
  return out;
}

std::string DescribeReport(std::string_view name, const MonotonicityReport& r) {
  std::ostringstream s;
  s << name << ": " << VerdictName(r.verdict) << ", worst_margin " << FormatNumber(r.worst_margin)
    << ", pairs " << r.pairs_tested << ", seed " << r.seed;
  if (!r.witness_s.empty()) {
    s << ", witness s=(";
    for (std::size_t i = 0; i < r.witness_s.size(); ++i) s << (i ? "," : "") << r.witness_s[i] + 1;
    s << ") t=(";
    for (std::size_t i = 0; i < r.witness_t.size(); ++i) s << (i ? "," : "") << r.witness_t[i] + 1;
    s << ")";
  }
  if (r.verdict == Verdict::kCertifiedSampled) s << " (sampled evidence, not a proof)";
  s << "\n";
  return s.str();
}

std::string FlowSummary(const RunSpec& spec, double h, const FlowResult& r) {
  std::ostringstream s;
  s << "scheme: " << SchemeName(spec.flow.scheme) << "\n"
    << "step_size: " << FormatNumber(h) << "\n"
    << "t_max: " << FormatNumber(spec.flow.t_max) << "\n"
    << "gap_tol: " << FormatNumber(spec.flow.gap_tol) << "\n"
    << "steps: " << r.steps << "\n"
    << "stop_reason: " << StopReasonName(r.stop_reason) << "\n"
    << "final_time: " << FormatNumber(r.times.back()) << "\n"
    << "final_state: " << FormatProfile(r.states.back()) << "\n"
    << "final_cesaro: " << FormatProfile(r.cesaro.back()) << "\n"
    << "final_gap: " << FormatNumber(r.gaps.back()) << "\n";
  if (spec.flow.scheme == Scheme::kInteriorRk4)
    s << "rk4_fallback_steps: " << r.fallback_steps << "\n";
  if (spec.flow.scheme == Scheme::kProximalImplicit)
    s << "solver_warnings: " << r.solver_warnings << "\n"
      << "max_inner_residual: " << FormatNumber(r.max_inner_residual) << "\n";
  return s.str();
}

StrategyProfile InitialProfile(const TensorGame& game, const std::vector<double>& flat) {
  if (flat.empty()) return UniformProfile(game);
  std::size_t total = 0;
  for (int m : game.action_counts()) total += static_cast<std::size_t>(m);
  Require(flat.size() == total, "initial state has " + std::to_string(flat.size()) +
                                    " values, game needs " + std::to_string(total));
  StrategyProfile x;
  std::size_t at = 0;
  for (int m : game.action_counts()) {
    x.emplace_back(std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(at),
                                       flat.begin() + static_cast<std::ptrdiff_t>(at + m)));
    at += static_cast<std::size_t>(m);
  }
  return x;
}

MixedStrategy InitialDistribution(int m, const std::vector<double>& flat) {
  if (flat.empty()) return MixedStrategy::Uniform(m);
  Require(static_cast<int>(flat.size()) == m, "initial distribution has " +
                                                  std::to_string(flat.size()) +
                                                  " values, expected " + std::to_string(m));
  return MixedStrategy(flat);
}

fs::path ResolveOutputDir(const RunSpec& spec) {
  if (!spec.output_dir.empty()) return spec.output_dir;
  const char* root = std::getenv(kOutputRootEnv);
  const fs::path base = (root && *root) ? fs::path(root) : fs::path("runs");
  return base / (std::string(RunModeName(spec.mode)) + "-seed" + std::to_string(spec.seed));
}

void PrepareOutputDir(const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec))
      Fail(ErrorCode::kIo, "output path '" + dir.string() + "' is not a directory");
    if (!fs::is_empty(dir, ec) && !force)
      Fail(ErrorCode::kIo, "output directory '" + dir.string() +
                               "' is not empty; pass --force to overwrite");
  }
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
}

int FlowExit(const FlowResult& r) { return r.stop_reason == StopReason::kGapTolMet ? 0 : 2; }

// A fully computed run, ready to be written.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  int exit_status = 0;
  std::string message;
};

Artifacts RunGameFlow(const RunSpec& spec, const TensorGame& game, const StrategyProfile& x0,
                      std::string extra_report) {
  FlowConfig cfg = spec.flow;
  cfg.step_size = spec.step_size.value_or(DefaultStepSize(LipschitzBound(game)));
  std::string report = "mode: " + std::string(RunModeName(spec.mode)) + "\n";
  report += "players: " + std::to_string(game.num_players()) + "\n";
  report += std::string("zero_sum: ") + (game.zero_sum() ? "true" : "false") + "\n";
  if (spec.check_monotone) {
    report += DescribeReport("pure_monotonicity",
                             PureMonotonicityCheck(game, kDefaultPairCap, kDefaultMonotoneTol, spec.seed));
    report += DescribeReport("variational_monotonicity",
                             VariationalMonotonicityCheck(game, kDefaultSamples, kDefaultMonotoneTol,
                                                          spec.seed));
  }
  const FlowResult r = Integrate(game, x0, cfg);
  report += FlowSummary(spec, cfg.step_size, r);
  report += extra_report;
  if (spec.mode == RunMode::kAppendixB) {
    const auto v0 = oracle::Reduce(x0);
    const auto vt = oracle::Reduce(r.states.back());
    const auto vc = oracle::Reduce(r.cesaro.back());
    report += "initial_radius: " + FormatNumber(oracle::Radius(v0)) + "\n";
    report += "final_radius: " + FormatNumber(oracle::Radius(vt)) + "\n";
    report += "cesaro_distance_to_equilibrium: " +
              FormatNumber(std::hypot(vc.v1 - oracle::kCenterV1, vc.v2 - oracle::kCenterV2)) + "\n";
    if (oracle::Radius(v0) <= oracle::LimitCircleRadius()) {
      double worst = 0.0;
      for (std::size_t i = 0; i < r.times.size(); ++i) {
        const auto exact = oracle::AnalyticSolution(v0, r.times[i]);
        const auto got = oracle::Reduce(r.states[i]);
        worst = std::max({worst, std::abs(exact.v1 - got.v1), std::abs(exact.v2 - got.v2)});
      }
      report += "max_error_vs_closed_form: " + FormatNumber(worst) + "\n";
    }
  }
  Artifacts a;
  a.exit_status = FlowExit(r);
  a.message = std::string(StopReasonName(r.stop_reason)) + ", final gap " + FormatNumber(r.gaps.back());
  a.files = {{"trajectory.csv", TrajectoryCsv(r)}, {"gaps.csv", GapsCsv(r)}, {"report.txt", report}};
  return a;
}

std::string SupportLine(const MixedStrategy& mu) {
  std::string s = "support (mass > 0.01):";
  int best = 0;
  for (int k = 0; k < mu.size(); ++k) {
    if (mu[k] > 0.01) s += " " + std::to_string(k + 1);
    if (mu[k] > mu[best]) best = k;
  }
  s += "\ndominant_state: " + std::to_string(best + 1) + " (mass " + FormatNumber(mu[best]) + ")\n";
  return s;
}

Artifacts RunMeanField(const RunSpec& spec, const MeanFieldCost& cost) {
  const MixedStrategy mu0 = InitialDistribution(cost.states(), spec.initial);
  FlowConfig cfg = spec.flow;
  cfg.step_size = spec.step_size.value_or(1e-2);
  std::string report = "mode: meanfield\nstates: " + std::to_string(cost.states()) + "\n";
  report += "congestion: " + cost.congestion().Name() + "\n";
  if (spec.check_monotone) {
    report += DescribeReport("meanfield_monotonicity",
                             MeanFieldMonotonicityCheck(cost, kDefaultSamples, kDefaultMonotoneTol,
                                                        spec.seed));
    if (cost.has_kernel())
      report += "kernel_min_eigenvalue: " + FormatNumber(KernelMinEigenvalue(cost)) + "\n";
  }
  const FlowResult r = MeanFieldIntegrate(cost, mu0, cfg);
  report += FlowSummary(spec, cfg.step_size, r);
  report += SupportLine(r.cesaro.back()[0]);
  Artifacts a;
  a.exit_status = FlowExit(r);
  a.message = std::string(StopReasonName(r.stop_reason)) + ", final exploitability " +
              FormatNumber(r.gaps.back());
  a.files = {{"trajectory.csv", TrajectoryCsv(r)}, {"gaps.csv", GapsCsv(r)}, {"report.txt", report}};
  return a;
}

Artifacts RunSymmetric(const RunSpec& spec, TensorGame game) {
  const SymmetricGameView view(std::move(game));
  const MixedStrategy mu0 = InitialDistribution(view.actions(), spec.initial);
  FlowConfig cfg = spec.flow;
  cfg.step_size = spec.step_size.value_or(DefaultStepSize(LipschitzBound(view.base())));
  std::string report = "mode: symmetric\nplayers: " + std::to_string(view.base().num_players()) +
                       "\nactions: " + std::to_string(view.actions()) + "\n";
  report += std::string("symmetry_check: ") + (view.exhaustive() ? "exhaustive" : "sampled") + "\n";
  if (spec.check_monotone) {
    report += DescribeReport("pure_monotonicity",
                             PureMonotonicityCheck(view.base(), kDefaultPairCap, kDefaultMonotoneTol,
                                                   spec.seed));
    report += DescribeReport("variational_monotonicity",
                             VariationalMonotonicityCheck(view.base(), kDefaultSamples,
                                                          kDefaultMonotoneTol, spec.seed));
  }
  const FlowResult r = SymmetricFlow(view, mu0, cfg);
  report += FlowSummary(spec, cfg.step_size, r);
  report += SupportLine(r.cesaro.back()[0]);
  Artifacts a;
  a.exit_status = FlowExit(r);
  a.message = std::string(StopReasonName(r.stop_reason)) + ", final exploitability " +
              FormatNumber(r.gaps.back());
  a.files = {{"trajectory.csv", TrajectoryCsv(r)}, {"gaps.csv", GapsCsv(r)}, {"report.txt", report}};
  return a;
}

Artifacts RunGaussian(const RunSpec& spec) {
  Require(spec.gaussian_dim >= 2, "gaussian-check needs dimension at least 2");
  Require(spec.gaussian_samples >= 2, "gaussian-check needs at least two samples");
  Require(spec.gaussian_pairs >= 1, "gaussian-check needs at least one pair");
  const std::size_t n = spec.gaussian_samples;
  const auto table = gaussian::SampleGamma(spec.gaussian_dim, n, spec.seed);
  Rng coeffs(spec.seed ^ 0x9e3779b97f4a7c15ULL);

  std::string csv = "kind,index,estimate,exact,tolerance,pass\n";
  bool all = true;
  int failures = 0;
  auto row = [&](const std::string& kind, int idx, double est, double exact, double tol) {
    const bool ok = std::abs(est - exact) <= tol;
    all = all && ok;
    failures += ok ? 0 : 1;
    csv += kind + "," + std::to_string(idx) + "," + FormatNumber(est) + "," + FormatNumber(exact) +
           "," + FormatNumber(tol) + "," + (ok ? "1" : "0") + "\n";
  };
  const auto m = static_cast<std::size_t>(spec.gaussian_dim);
  for (int p = 0; p < spec.gaussian_pairs; ++p) {
    std::vector<double> mu(m);
    std::vector<double> nu(m);
    for (double& v : mu) v = 2.0 * coeffs.Uniform() - 1.0;
    for (double& v : nu) v = 2.0 * coeffs.Uniform() - 1.0;
    double exact = 0.0;
    for (std::size_t k = 0; k < m; ++k) exact += mu[k] * nu[k];
    row("inner", p, gaussian::EstimateInner(mu, nu, table), exact, gaussian::InnerTolerance(mu, nu, n));
    const auto jay = gaussian::JayMap(nu);
    const double duality = gaussian::Pairing(mu, jay);
    row("duality", p, duality, exact, 1e-15 * (1.0 + std::abs(exact)) * static_cast<double>(m));
  }
  std::vector<double> c(m, 0.0);
  c[0] = 3.0;
  c[1] = 4.0;
  row("pushforward", 0, gaussian::PushforwardVariance(c, table), 25.0,
      gaussian::PushforwardTolerance(c, n));
  std::vector<double> nu(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) nu[k] = static_cast<double>(k + 1);
  const auto jay_mc = gaussian::EstimateJay(nu, table);
  for (std::size_t k = 0; k < m; ++k)
    row("jay", static_cast<int>(k), jay_mc[k], nu[k], gaussian::JayTolerance(nu, k, n));

  std::string report = "mode: gaussian-check\nseed: " + std::to_string(spec.seed) +
                       "\nsamples: " + std::to_string(n) + "\ndimension: " + std::to_string(m) +
                       "\nfailed_rows: " + std::to_string(failures) + "\nresult: " +
                       (all ? "passed" : "failed") + "\n";
  Artifacts a;
  a.exit_status = all ? 0 : 2;
  a.message = all ? "gaussian checks passed" : std::to_string(failures) + " gaussian checks failed";
  a.files = {{"gaussian.csv", csv}, {"report.txt", report}};
  return a;
}

}  // namespace

std::string FormatNumber(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

TensorGame ParseGame(std::string_view text) {
  const json doc = ParseJson(text);
  CheckKeys(doc, {"players", "actions", "costs", "zero_sum_expected"});
  const long long players = AsInt(Field(doc, "players"), "players");
  if (players < 1) ParseFail("field 'players' must be at least 1");
  const json& actions_json = Field(doc, "actions");
  if (!actions_json.is_array()) ParseFail("field 'actions' must be an array");
  if (static_cast<long long>(actions_json.size()) != players)
    Fail(ErrorCode::kInvalidInput, "dimension mismatch: field 'actions' has " +
                                       std::to_string(actions_json.size()) + " entries for " +
                                       std::to_string(players) + " players");
  std::vector<int> actions;
  std::size_t joint = 1;
  for (std::size_t i = 0; i < actions_json.size(); ++i) {
    const long long m = AsInt(actions_json[i], "actions[" + std::to_string(i) + "]");
    if (m < 1 || m > 1'000'000) ParseFail("field 'actions[" + std::to_string(i) + "]' out of range");
    actions.push_back(static_cast<int>(m));
    joint *= static_cast<std::size_t>(m);
    if (joint > 100'000'000) ParseFail("game has too many joint actions");
  }
  const json& costs_json = Field(doc, "costs");
  if (!costs_json.is_array()) ParseFail("field 'costs' must be an array");
  if (static_cast<long long>(costs_json.size()) != players)
    Fail(ErrorCode::kInvalidInput, "field 'costs' has " + std::to_string(costs_json.size()) +
                                       " arrays for " + std::to_string(players) + " players");
  std::vector<std::vector<double>> costs;
  for (std::size_t j = 0; j < costs_json.size(); ++j) {
    const std::string where = "costs[" + std::to_string(j) + "]";
    auto f = AsRealArray(costs_json[j], where);
    if (f.size() != joint)
      Fail(ErrorCode::kInvalidInput, "dimension mismatch: field '" + where + "' has " +
                                         std::to_string(f.size()) + " entries, actions imply " +
                                         std::to_string(joint));
    costs.push_back(std::move(f));
  }
  TensorGame game(std::move(actions), std::move(costs));
  if (const auto it = doc.find("zero_sum_expected"); it != doc.end()) {
    if (!it->is_boolean()) ParseFail("field 'zero_sum_expected' must be a boolean");
    if (it->get<bool>() != game.zero_sum())
      Fail(ErrorCode::kInvalidInput,
           std::string("zero_sum_expected is ") + (it->get<bool>() ? "true" : "false") +
               " but the costs are " + (game.zero_sum() ? "" : "not ") + "zero-sum");
  }
  return game;
}

TensorGame LoadGame(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return ParseGame(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeGame(const TensorGame& game) {
  json doc;
  doc["players"] = game.num_players();
  doc["actions"] = game.action_counts();
  doc["costs"] = game.all_costs();
  doc["zero_sum_expected"] = game.zero_sum();
  return doc.dump(2) + "\n";
}

void SaveGame(const TensorGame& game, const std::string& path) {
  WriteFile(path, SerializeGame(game));
}

MeanFieldCost ParseMeanField(std::string_view text) {
  const json doc = ParseJson(text);
  CheckKeys(doc, {"states", "phi", "kernel", "psi", "monotone_by_construction"});
  const long long m = AsInt(Field(doc, "states"), "states");
  if (m < 1 || m > 100'000) ParseFail("field 'states' out of range");
  auto phi = AsRealArray(Field(doc, "phi"), "phi");
  if (static_cast<long long>(phi.size()) != m)
    Fail(ErrorCode::kInvalidInput, "dimension mismatch: field 'phi' has " +
                                       std::to_string(phi.size()) + " entries for " +
                                       std::to_string(m) + " states");
  std::vector<double> kernel;
  if (const auto it = doc.find("kernel"); it != doc.end() && !it->is_null()) {
    kernel = AsRealArray(*it, "kernel");
    if (static_cast<long long>(kernel.size()) != m * m)
      Fail(ErrorCode::kInvalidInput, "dimension mismatch: field 'kernel' has " +
                                         std::to_string(kernel.size()) + " entries, expected " +
                                         std::to_string(m * m));
  }
  Congestion psi;
  if (const auto it = doc.find("psi"); it != doc.end() && !it->is_null()) {
    if (it->is_string()) {
      psi.kind = ParseCongestionKind(it->get<std::string>());
    } else if (it->is_object()) {
      CheckKeys(*it, {"name", "p"});
      const json& name = Field(*it, "name");
      if (!name.is_string()) ParseFail("field 'psi.name' must be a string");
      psi.kind = ParseCongestionKind(name.get<std::string>());
      if (const auto p = it->find("p"); p != it->end()) psi.exponent = AsReal(*p, "psi.p");
    } else {
      ParseFail("field 'psi' must be a name or an object");
    }
    if (psi.kind == Congestion::Kind::kPower && !it->contains("p") && it->is_object())
      ParseFail("power congestion needs field 'psi.p'");
  }
  bool monotone = false;
  if (const auto it = doc.find("monotone_by_construction"); it != doc.end()) {
    if (!it->is_boolean()) ParseFail("field 'monotone_by_construction' must be a boolean");
    monotone = it->get<bool>();
  }
  return MeanFieldCost(std::move(phi), std::move(kernel), psi, monotone);
}

MeanFieldCost LoadMeanField(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return ParseMeanField(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeMeanField(const MeanFieldCost& cost) {
  json doc;
  doc["states"] = cost.states();
  doc["phi"] = cost.phi();
  if (cost.has_kernel()) doc["kernel"] = cost.kernel();
  json psi;
  psi["name"] = cost.congestion().Name();
  if (cost.congestion().kind == Congestion::Kind::kPower) psi["p"] = cost.congestion().exponent;
  doc["psi"] = psi;
  doc["monotone_by_construction"] = cost.monotone_by_construction();
  return doc.dump(2) + "\n";
}

std::string_view RunModeName(RunMode m) {
  switch (m) {
    case RunMode::kNPlayer:
      return "nplayer";
    case RunMode::kMeanField:
      return "meanfield";
    case RunMode::kSymmetric:
      return "symmetric";
    case RunMode::kAppendixB:
      return "appendix-b";
    case RunMode::kGaussianCheck:
      return "gaussian-check";
  }
  return "unknown";
}

RunMode ParseRunMode(std::string_view name) {
  for (RunMode m : {RunMode::kNPlayer, RunMode::kMeanField, RunMode::kSymmetric,
                    RunMode::kAppendixB, RunMode::kGaussianCheck})
    if (RunModeName(m) == name) return m;
  Fail(ErrorCode::kInvalidInput, "unknown mode '" + std::string(name) + "'");
}

RunOutcome Run(const RunSpec& spec) {
  RunOutcome outcome;
  try {
    FlowConfig probe = spec.flow;
    if (spec.step_size) probe.step_size = *spec.step_size;
    probe.Validate();
    const bool needs_input = spec.mode == RunMode::kNPlayer || spec.mode == RunMode::kMeanField ||
                             spec.mode == RunMode::kSymmetric;
    Require(!needs_input || !spec.input_path.empty(),
            "mode " + std::string(RunModeName(spec.mode)) + " needs an input file");

    // Everything up to here is validation; computing before creating the
    // output directory keeps failed runs from leaving partial results.
    Artifacts a;
    switch (spec.mode) {
      case RunMode::kNPlayer: {
        const TensorGame game = LoadGame(spec.input_path);
        a = RunGameFlow(spec, game, InitialProfile(game, spec.initial), "");
        break;
      }
      case RunMode::kAppendixB: {
        const TensorGame game = oracle::AppendixGame();
        oracle::ReducedState v0{0.8, 2.0 / 3.0};
        if (!spec.initial.empty()) {
          Require(spec.initial.size() == 2, "appendix-b takes two reduced coordinates (v1, v2)");
          v0 = {spec.initial[0], spec.initial[1]};
        }
        a = RunGameFlow(spec, game, oracle::Lift(v0), "");
        break;
      }
      case RunMode::kMeanField:
        a = RunMeanField(spec, LoadMeanField(spec.input_path));
        break;
      case RunMode::kSymmetric:
        a = RunSymmetric(spec, LoadGame(spec.input_path));
        break;
      case RunMode::kGaussianCheck:
        a = RunGaussian(spec);
        break;
    }

    const fs::path dir = ResolveOutputDir(spec);
    PrepareOutputDir(dir, spec.force);
    for (const auto& [name, text] : a.files) WriteFile(dir / name, text);
    outcome.exit_status = a.exit_status;
    outcome.output_dir = dir.string();
    outcome.message = a.message;
  } catch (const Error& e) {
    outcome.exit_status = 1;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace monoflow::io
