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

#ifndef BATTLELOG_ENGINE_H_
#define BATTLELOG_ENGINE_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/protocol.h"

namespace battlelog::engine {

inline constexpr int kNumActions = 9;
inline constexpr int kMaxMoves = 4;
inline constexpr int kFirstSwitch = 4;
inline constexpr int kDefaultMaxTurns = 1000;

enum class Status { kNone, kBurn, kParalysis, kPoison, kToxic, kSleep, kFreeze };
// Protocol ids: "", "brn", "par", "psn", "tox", "slp", "frz".
std::string_view StatusId(Status s);
Status ParseStatus(std::string_view id);

struct PokemonSpec {
  std::string species;
  int level = 100;
  std::vector<std::string> moves;
  std::string item;
  std::string ability;
  bool operator==(const PokemonSpec&) const = default;
};
using Team = std::vector<PokemonSpec>;

// Throws IllegalTeam unless the team is legal for the format.
void ValidateTeam(const data::GameData& data, const data::FormatData& format, const Team& team);

// Battle stats (hp atk def spa spd spe) at the generation's fixed spread.
std::array<int, 6> ComputeStats(const data::SpeciesData& species, int level, int gen);

struct PokemonState {
  PokemonSpec spec;  // moves sorted alphabetically
  std::vector<std::string> types;
  std::array<int, 6> stats{};
  int hp = 0;
  int max_hp = 0;
  Status status = Status::kNone;
  int sleep_turns = 0;
  int toxic_counter = 0;
  bool slept_by_foe = false;
  data::Boosts boosts{};
  int confusion_turns = 0;
  std::vector<int> pp;  // parallel to spec.moves
  std::string last_move;
  bool item_consumed = false;

  bool Fainted() const { return hp <= 0; }
  double HpFraction() const { return max_hp > 0 ? static_cast<double>(hp) / max_hp : 0.0; }
  std::string ActiveItem() const { return item_consumed ? std::string() : spec.item; }
  std::string Details() const;  // "Tauros" or "Tauros, L88"
};

PokemonState MakePokemon(const data::GameData& data, const PokemonSpec& spec, int gen);

struct SideState {
  std::string name;
  std::vector<PokemonState> team;
  int active = 0;
  int spikes = 0;
  int reflect_turns = 0;
  int light_screen_turns = 0;

  const PokemonState& Active() const { return team[active]; }
  PokemonState& Active() { return team[active]; }
  bool AllFainted() const;
  // Non-active team indices in action order (species name).
  std::vector<int> BenchOrder() const;
};

struct FieldState {
  std::string weather;  // "", "RainDance", "SunnyDay", "Sandstorm"
  int weather_turns = 0;
};

struct Outcome {
  enum class Kind { kOngoing, kWin, kTie };
  Kind kind = Kind::kOngoing;
  Side winner = Side::kP1;
  bool Over() const { return kind != Kind::kOngoing; }
};

struct BattleState {
  std::shared_ptr<const data::GameData> data;
  std::string format_id;
  int gen = 1;
  uint64_t seed = 0;
  int turn = 0;
  int max_turns = kDefaultMaxTurns;
  uint64_t step_count = 0;
  std::array<SideState, 2> sides;
  FieldState field;
  std::array<bool, 2> force_switch{false, false};
  Outcome outcome;

  const data::GenConfig& Config() const { return data->Gen(gen); }
  const SideState& SideOf(Side s) const { return sides[Index(s)]; }
  SideState& SideOf(Side s) { return sides[Index(s)]; }
  bool InForceSwitch() const { return force_switch[0] || force_switch[1]; }
};

struct BattleConfig {
  std::string format_id = "gen1ou";
  std::array<std::string, 2> names = {"Player 1", "Player 2"};
  std::array<Team, 2> teams;
  uint64_t seed = 0;
  int max_turns = kDefaultMaxTurns;
};

// Creates the battle and appends the header, lead switches and `|turn|1`.
BattleState NewBattle(std::shared_ptr<const data::GameData> data, const BattleConfig& config,
                      std::vector<protocol::ProtocolEvent>* events);

// Legal action indices in increasing order. In a force-switch step a side
// that is not switching gets {0} (its choice is ignored).
std::vector<int> legal_actions(const BattleState& state, Side side);
bool NeedsChoice(const BattleState& state, Side side);

// Move name an action index refers to ("Struggle" when every move is out of PP).
std::optional<std::string> MoveForAction(const BattleState& state, Side side, int action);
// Team index a switch action refers to.
std::optional<int> SwitchTarget(const BattleState& state, Side side, int action);

// Public quantities summed over one side, used for reward inputs.
struct SideSnapshot {
  double hp = 0.0;  // sum of hp fractions
  int statused = 0;
  int fainted = 0;
};

struct StepResult {
  std::vector<protocol::ProtocolEvent> events;
  std::array<int, 2> used{-1, -1};          // actions actually executed
  std::array<bool, 2> replaced{false, false};  // illegal input replaced at random
  std::array<SideSnapshot, 2> before;
  std::array<SideSnapshot, 2> after;
};

StepResult step(BattleState& state, int choice_p1, int choice_p2);

SideSnapshot Snapshot(const SideState& side);

enum class RngMode { kMin, kMax, kExpected, kSampled };

struct DamageBreakdown {
  int base = 0;                // before any multiplier
  double effectiveness = 1.0;
  double stab = 1.0;
  double other = 1.0;          // weather, screens, items, abilities, crit
  int min_damage = 0;
  int max_damage = 0;
  double damage = 0.0;         // in the requested mode, in hp points
};

struct DamageContext {
  int gen = 1;
  std::string weather;
  bool screen = false;  // defender's Reflect/Light Screen matches the category
  bool crit = false;
};

// Damage of `move` as a fraction of the defender's max hp.
double damage_calc(const data::GameData& data, const PokemonState& attacker,
                   const PokemonState& defender, const data::MoveData& move,
                   const DamageContext& ctx, RngMode mode, uint64_t rng_key = 0,
                   DamageBreakdown* breakdown = nullptr);

bool IsPhysical(const data::MoveData& move, int gen);
double StageMultiplier(int stage);
double AccuracyStageMultiplier(int stage);
int EffectiveSpeed(const PokemonState& p);

// Battle-wide counter-based randomness: every draw is a pure function of
// (seed, step, ordinal).
class BattleRng {
 public:
  BattleRng(uint64_t seed, uint64_t step) : key_(HashCombine(seed, step)) {}
  uint64_t Next() { return Mix64(key_ ^ Mix64(++ordinal_)); }
  int Below(int n);
  bool Chance(int percent) { return Below(100) < percent; }
  double Uniform();

 private:
  uint64_t key_;
  uint64_t ordinal_ = 0;
};

}  // namespace battlelog::engine

#endif  // BATTLELOG_ENGINE_H_
