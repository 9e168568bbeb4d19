// Copyright 2026 The Battlelog Authors
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


#include "battlelog/rlmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "battlelog/common.h"

namespace battlelog::rlmath {
namespace {

void CheckDistribution(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) Fail(ErrorCode::kInvalidArgument, std::string(what) + ": negative or NaN mass");
    sum += x;
  }
  if (std::abs(sum - 1.0) > defaults::kMassTolerance)
    Fail(ErrorCode::kInvalidArgument, std::string(what) + ": mass sums to " + std::to_string(sum));
}

}  // namespace

std::string_view WeightKindName(WeightKind kind) {
  switch (kind) {
    case WeightKind::kIL: return "IL";
    case WeightKind::kExp: return "Exp";
    case WeightKind::kBinary: return "Binary";
    case WeightKind::kBinaryMaxQ: return "BinaryMaxQ";
  }
  return "?";
}

void WeightConfig::Validate() const {
  if (!(clip_lo > 0.0)) Fail(ErrorCode::kInvalidArgument, "weight config: clip_lo must be positive");
  if (!(clip_lo <= clip_hi)) Fail(ErrorCode::kInvalidArgument, "weight config: clip_lo above clip_hi");
  if (!(lambda >= 0.0)) Fail(ErrorCode::kInvalidArgument, "weight config: negative lambda");
  if (lambda != 0.0 && kind != WeightKind::kBinaryMaxQ)
    Fail(ErrorCode::kInvalidArgument, "weight config: lambda is only used by BinaryMaxQ");
  if (!std::isfinite(beta)) Fail(ErrorCode::kInvalidArgument, "weight config: beta not finite");
}

WeightConfig WeightConfig::IL() { return {}; }

WeightConfig WeightConfig::Exp(double beta) {
  WeightConfig c;
  c.kind = WeightKind::kExp;
  c.beta = beta;
  return c;
}

WeightConfig WeightConfig::ExpExtreme() {
  WeightConfig c = Exp(defaults::kExpExtremeBeta);
  c.clip_hi = defaults::kExpExtremeClipHi;
  return c;
}

WeightConfig WeightConfig::Binary() {
  WeightConfig c;
  c.kind = WeightKind::kBinary;
  return c;
}

WeightConfig WeightConfig::BinaryMaxQ(double lambda) {
  WeightConfig c;
  c.kind = WeightKind::kBinaryMaxQ;
  c.lambda = lambda;
  return c;
}

void ValueBins::Validate() const {
  if (n_bins < 2) Fail(ErrorCode::kInvalidArgument, "value bins: need at least two bins");
  if (!(lo < hi)) Fail(ErrorCode::kInvalidArgument, "value bins: lo must be below hi");
}

double ValueBins::Center(int k) const {
  if (k == n_bins - 1) return hi;  // exact endpoint, no rounding drift
  return lo + k * (hi - lo) / (n_bins - 1);
}

std::vector<double> ValueBins::Centers() const {
  std::vector<double> c(n_bins);
  for (int k = 0; k < n_bins; ++k) c[k] = Center(k);
  return c;
}

void GammaSet::Validate() const {
  if (gammas.empty()) Fail(ErrorCode::kInvalidArgument, "gamma set is empty");
  for (size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0 && gammas[i] < 1.0))
      Fail(ErrorCode::kInvalidArgument, "gamma outside (0, 1)");
    if (i > 0 && !(gammas[i] > gammas[i - 1]))
      Fail(ErrorCode::kInvalidArgument, "gammas must be strictly increasing");
  }
  if (std::find(gammas.begin(), gammas.end(), defaults::kEvalGamma) == gammas.end())
    Fail(ErrorCode::kInvalidArgument, "gamma set lacks the evaluation gamma");
  if (eval_index < 0 || eval_index >= static_cast<int>(gammas.size()))
    Fail(ErrorCode::kInvalidArgument, "gamma eval index out of range");
}

GammaSet GammaSet::Default() {
  GammaSet g;
  g.gammas.assign(std::begin(defaults::kGammas), std::end(defaults::kGammas));
  g.eval_index = static_cast<int>(
      std::find(g.gammas.begin(), g.gammas.end(), defaults::kEvalGamma) - g.gammas.begin());
  return g;
}

std::vector<double> EnsembleMean(const std::vector<std::vector<double>>& q_members) {
  if (q_members.empty()) Fail(ErrorCode::kInvalidArgument, "empty critic ensemble");
  std::vector<double> mean(q_members.front().size(), 0.0);
  for (const auto& m : q_members) {
    if (m.size() != mean.size()) Fail(ErrorCode::kInvalidArgument, "ragged critic ensemble");
    for (size_t a = 0; a < m.size(); ++a) mean[a] += m[a];
  }
  for (double& x : mean) x /= static_cast<double>(q_members.size());
  return mean;
}

double advantage(double q_of_action, std::span<const double> q_all, std::span<const double> probs) {
  if (q_all.size() != probs.size() || q_all.empty())
    Fail(ErrorCode::kInvalidArgument, "advantage: q and policy sizes differ");
  CheckDistribution(probs, "advantage policy");
  double baseline = 0.0;
  for (size_t a = 0; a < q_all.size(); ++a) baseline += probs[a] * q_all[a];
  return q_of_action - baseline;
}

double advantage(int action, const std::vector<std::vector<double>>& q_members,
                 std::span<const double> probs) {
  std::vector<double> q = EnsembleMean(q_members);
  if (action < 0 || action >= static_cast<int>(q.size()))
    Fail(ErrorCode::kInvalidArgument, "advantage: action out of range");
  return advantage(q[action], q, probs);
}

double actor_weight(const WeightConfig& cfg, double a) {
  switch (cfg.kind) {
    case WeightKind::kIL:
      return 1.0;
    case WeightKind::kExp:
      return std::clamp(std::exp(cfg.beta * a), cfg.clip_lo, cfg.clip_hi);
    case WeightKind::kBinary:
    case WeightKind::kBinaryMaxQ:
      return a > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

ActorLossTerms actor_loss_terms(const WeightConfig& cfg, double logpi_of_action, double advantage,
                                double expected_q_under_pi) {
  if (logpi_of_action > 0.0) Fail(ErrorCode::kInvalidArgument, "log-probability above zero");
  ActorLossTerms t;
  // IL ignores the critic entirely, so neither input is read.
  const double w = cfg.kind == WeightKind::kIL ? 1.0 : actor_weight(cfg, advantage);
  t.bc = w == 0.0 ? 0.0 : -w * logpi_of_action;
  t.maxq = cfg.lambda == 0.0 ? 0.0 : -cfg.lambda * expected_q_under_pi;
  return t;
}

double mean_actor_loss(std::span<const ActorLossTerms> terms) {
  if (terms.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : terms) sum += t.Total();
  return sum / static_cast<double>(terms.size());
}

double td_target(double reward, double gamma, double bootstrap_q, bool done) {
  return done ? reward : reward + gamma * bootstrap_q;
}

std::vector<double> two_hot_encode(double v, const ValueBins& bins) {
  bins.Validate();
  std::vector<double> p(bins.n_bins, 0.0);
  if (std::isnan(v)) Fail(ErrorCode::kInvalidArgument, "two-hot: NaN value");
  if (v <= bins.lo) {
    p.front() = 1.0;
    return p;
  }
  if (v >= bins.hi) {
    p.back() = 1.0;
    return p;
  }
  const double step = (bins.hi - bins.lo) / (bins.n_bins - 1);
  int k = std::min(static_cast<int>(std::floor((v - bins.lo) / step)), bins.n_bins - 2);
  // Recompute the fraction against the actual centers so decode is exact.
  const double left = bins.Center(k);
  const double right = bins.Center(k + 1);
  const double frac = std::clamp((v - left) / (right - left), 0.0, 1.0);
  p[k] = 1.0 - frac;
  p[k + 1] = frac;
  return p;
}

double two_hot_decode(std::span<const double> p, const ValueBins& bins) {
  bins.Validate();
  if (static_cast<int>(p.size()) != bins.n_bins)
    Fail(ErrorCode::kInvalidArgument, "two-hot: wrong number of bins");
  CheckDistribution(p, "two-hot decode");
  double v = 0.0;
  for (int k = 0; k < bins.n_bins; ++k)
    if (p[k] != 0.0) v += p[k] * bins.Center(k);
  return v;
}

double win_probability(double q, double reward_scale) {
  if (!(reward_scale > 0.0)) Fail(ErrorCode::kInvalidArgument, "reward scale must be positive");
  return std::clamp(0.5 + q / (2.0 * reward_scale), 0.0, 1.0);
}

AutoForfeit::AutoForfeit(double threshold, int turns) : threshold_(threshold), turns_(turns) {
  if (turns < 1) Fail(ErrorCode::kInvalidArgument, "forfeit window must be at least one turn");
}

bool AutoForfeit::Update(double win_prob) {
  streak_ = win_prob < threshold_ ? streak_ + 1 : 0;
  return streak_ >= turns_;
}

double binary_pass_rate(std::span<const double> advantages) {
  if (advantages.empty()) return 0.0;
  const auto pass = std::count_if(advantages.begin(), advantages.end(), [](double a) { return a > 0.0; });
  return static_cast<double>(pass) / static_cast<double>(advantages.size());
}

}  // namespace battlelog::rlmath
