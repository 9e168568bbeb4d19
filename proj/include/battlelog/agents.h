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

#ifndef BATTLELOG_AGENTS_H_
#define BATTLELOG_AGENTS_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "battlelog/common.h"
#include "battlelog/engine.h"
#include "battlelog/tracker.h"

namespace battlelog::agents {

// Scripted players. An agent sees only a PovView: public battle state plus
// its own team sheet, never the opponent's hidden attributes.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  // Returns an element of `legal`, which must be non-empty.
  virtual int choose_action(const engine::PovView& view, const std::vector<int>& legal,
                            SeededRng& rng) const = 0;
};

struct BossConfig {
  int boost_turn = 2;
  double super_effective_weight = 4.0;  // relative to 1.0 for other moves
};

struct GymLeaderConfig {
  double boost_hp = 0.9;  // boost at or above this hp fraction
  double heal_hp = 0.35;  // heal at or below
  int boost_stage_cap = 6;  // skip boosts once every raised stat reaches this stage
};

struct SimpleHeuristicsConfig {
  double switch_out_matchup = -2.0;
  double speed_tier_coefficient = 0.1;
  double hp_fraction_coefficient = 0.4;
  int switch_out_boost_stage = -3;  // switch when atk/spa or def/spd fall this far
  double setup_hp = 0.99;
  int hazard_min_opponents = 3;
};

struct AgentConfig {
  BossConfig boss;
  GymLeaderConfig gym_leader;
  SimpleHeuristicsConfig simple;

  static AgentConfig FromJsonText(const std::string& text);
  static AgentConfig Load(const std::filesystem::path& path);
  // data/agents/thresholds.json
  static AgentConfig LoadDefault();
};

// Conditions a rule can require. Unset fields match anything.
struct RulePredicate {
  std::optional<std::string> action;      // "move" or "switch"
  std::optional<std::string> move_class;  // see MoveClass()
  std::optional<std::string> move;        // exact move id
  std::optional<std::string> effectiveness;  // super, neutral, resisted, immune
  std::optional<double> own_hp_below, own_hp_above;
  std::optional<double> opp_hp_below, opp_hp_above;
  std::optional<bool> own_statused, target_statused, target_confused;
  std::optional<bool> ko_possible;       // expected damage reaches the target's hp
  std::optional<bool> condition_active;  // the move's hazard, screen or weather is already up
  std::optional<int> own_boost_at_least;  // highest own boost stage
  std::optional<double> matchup_below, matchup_above;  // switch target vs opposing active
};

struct Rule {
  RulePredicate when;
  double score = 0.0;
  double score_per_damage = 0.0;  // times expected damage fraction
};

struct RuleTable {
  std::vector<Rule> rules;

  static RuleTable FromJsonText(const std::string& text);
  static RuleTable Load(const std::filesystem::path& path);
  // data/agents/emerald_kaizo.json
  static RuleTable LoadDefault();
};

// damaging, status, boost, heal, hazard, screen, weather, volatile, other
std::string MoveClass(const data::MoveData& move);

// Type matchup of `species` against the opposing active: best offensive
// multiplier it has minus the best the opponent has against it.
double TypeMatchup(const data::GameData& data, const std::vector<std::string>& mine,
                   const std::vector<std::string>& theirs, int gen);

// Expected damage (fraction of the target's max hp) of own active using `move`
// against the opposing active, from public information.
double ExpectedDamage(const engine::PovView& view, const std::string& move);

std::unique_ptr<Agent> MakeRandomBaseline();
std::unique_ptr<Agent> MakeGen1BossAI(const BossConfig& config = {});
std::unique_ptr<Agent> MakeGrunt();
std::unique_ptr<Agent> MakeGymLeader(const GymLeaderConfig& config = {});
std::unique_ptr<Agent> MakeEmeraldKaizo(RuleTable table);
std::unique_ptr<Agent> MakeSimpleHeuristics(const SimpleHeuristicsConfig& config = {});

// Registry: random, gen1bossai, grunt, gymleader, emeraldkaizo, simpleheuristics.
std::vector<std::string> AgentNames();
// Throws InvalidArgument for unknown names. Names are matched by ToId.
std::unique_ptr<Agent> MakeAgent(const std::string& name, const AgentConfig& config,
                                 const RuleTable& kaizo_table);
std::unique_ptr<Agent> MakeAgent(const std::string& name);

}  // namespace battlelog::agents

#endif  // BATTLELOG_AGENTS_H_
