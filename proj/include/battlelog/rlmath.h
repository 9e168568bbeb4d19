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


#ifndef BATTLELOG_RLMATH_H_
#define BATTLELOG_RLMATH_H_

#include <span>
#include <string_view>
#include <vector>

#include "battlelog/rlmath_defaults.h"

// Offline actor-critic math that an external trainer plugs its network
// outputs into. Nothing here computes gradients.
namespace battlelog::rlmath {

enum class WeightKind { kIL, kExp, kBinary, kBinaryMaxQ };
std::string_view WeightKindName(WeightKind kind);

// How much a logged action is imitated given its advantage.
struct WeightConfig {
  WeightKind kind = WeightKind::kIL;
  double beta = defaults::kExpBeta;
  double clip_lo = defaults::kExpClipLo;
  double clip_hi = defaults::kExpClipHi;
  double lambda = 0.0;  // only nonzero for kBinaryMaxQ

  // Throws InvalidArgument.
  void Validate() const;

  static WeightConfig IL();
  static WeightConfig Exp(double beta = defaults::kExpBeta);
  static WeightConfig ExpExtreme();
  static WeightConfig Binary();
  static WeightConfig BinaryMaxQ(double lambda = defaults::kMaxQLambda);
};

struct ValueBins {
  int n_bins = defaults::kValueBins;
  double lo = defaults::kValueLo;
  double hi = defaults::kValueHi;

  void Validate() const;
  double Center(int k) const;
  std::vector<double> Centers() const;
};

struct GammaSet {
  std::vector<double> gammas;
  int eval_index = 0;

  void Validate() const;
  double Eval() const { return gammas.at(eval_index); }
  static GammaSet Default();
};

// Column-wise mean of critic ensemble outputs: members x actions -> actions.
std::vector<double> EnsembleMean(const std::vector<std::vector<double>>& q_members);

// q_of_action - sum_a probs[a] * q_all[a]. Throws InvalidArgument when the
// sizes differ or probs is not a distribution.
double advantage(double q_of_action, std::span<const double> q_all, std::span<const double> probs);
// Same, averaging the ensemble first.
double advantage(int action, const std::vector<std::vector<double>>& q_members,
                 std::span<const double> probs);

double actor_weight(const WeightConfig& cfg, double advantage);

struct ActorLossTerms {
  double bc = 0.0;
  double maxq = 0.0;
  double Total() const { return bc + maxq; }
};

// bc = -weight * logpi, maxq = -lambda * E_pi[Q]. Throws InvalidArgument for logpi > 0.
ActorLossTerms actor_loss_terms(const WeightConfig& cfg, double logpi_of_action,
                                double advantage, double expected_q_under_pi);
// Mean of Total() over timesteps; 0 for an empty batch.
double mean_actor_loss(std::span<const ActorLossTerms> terms);

double td_target(double reward, double gamma, double bootstrap_q, bool done);

// Linear split of v (clamped into range) over its two neighbouring centers.
std::vector<double> two_hot_encode(double v, const ValueBins& bins = {});
// Expected center. Throws InvalidArgument unless p is a distribution of the right size.
double two_hot_decode(std::span<const double> p, const ValueBins& bins = {});

// Linear map of the evaluation-head value from [-scale, scale] onto [0, 1], clamped.
double win_probability(double q, double reward_scale = defaults::kRewardScale);

// Fires once the win estimate has stayed below `threshold` for `turns`
// consecutive updates.
class AutoForfeit {
 public:
  explicit AutoForfeit(double threshold = defaults::kForfeitThreshold,
                       int turns = defaults::kForfeitTurns);
  bool Update(double win_prob);
  int streak() const { return streak_; }

 private:
  double threshold_;
  int turns_;
  int streak_ = 0;
};

// Fraction of advantages that pass the binary filter (A > 0).
double binary_pass_rate(std::span<const double> advantages);

}  // namespace battlelog::rlmath

#endif  // BATTLELOG_RLMATH_H_
