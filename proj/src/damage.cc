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

#include <algorithm>
#include <cmath>

#include "battlelog/engine.h"

namespace battlelog::engine {
namespace {

constexpr std::string_view kPhysicalTypes[] = {"Normal", "Fighting", "Flying", "Poison", "Ground",
                                               "Rock",   "Bug",      "Ghost",  "Steel"};

int Floor(double x) { return static_cast<int>(std::floor(x + 1e-9)); }

}  // namespace

bool IsPhysical(const data::MoveData& move, int gen) {
  if (gen >= 4 || move.type.empty() || move.type == "???") return move.category == data::Category::kPhysical;
  return std::find(std::begin(kPhysicalTypes), std::end(kPhysicalTypes), move.type) !=
         std::end(kPhysicalTypes);
}

double damage_calc(const data::GameData& data, const PokemonState& attacker,
                   const PokemonState& defender, const data::MoveData& move,
                   const DamageContext& ctx, RngMode mode, uint64_t rng_key,
                   DamageBreakdown* breakdown) {
  if (!move.IsDamaging())
    Fail(ErrorCode::kInvalidArgument, move.name + " does not deal damage");
  const int gen = ctx.gen;
  const data::GenConfig& cfg = data.Gen(gen);
  DamageBreakdown b;
  b.effectiveness = move.type.empty() ? 1.0 : data.Effectiveness(move.type, defender.types, gen);
  if (gen >= 3 && defender.spec.ability == "Levitate" && move.type == "Ground")
    b.effectiveness = 0.0;
  if (b.effectiveness == 0.0) {
    if (breakdown) *breakdown = b;
    return 0.0;
  }
  const bool physical = IsPhysical(move, gen);
  const int atk_stat = physical ? 1 : 3;
  const int def_stat = physical ? 2 : 4;
  double attack = std::floor(attacker.stats[atk_stat] * StageMultiplier(attacker.boosts[atk_stat - 1]));
  double defense =
      std::floor(defender.stats[def_stat] * StageMultiplier(defender.boosts[def_stat - 1]));
  if (physical && attacker.status == Status::kBurn) attack = std::floor(attack / 2);
  if (gen >= 3 && defender.spec.ability == "Thick Fat" &&
      (move.type == "Fire" || move.type == "Ice"))
    attack = std::floor(attack / 2);
  attack = std::max(1.0, attack);
  defense = std::max(1.0, defense);

  const int level = attacker.spec.level;
  const int power = move.PowerIn(gen);
  const long long level_factor = 2 * level / 5 + 2;
  b.base = static_cast<int>(level_factor * power * static_cast<long long>(attack) /
                            static_cast<long long>(defense) / 50) + 2;

  if (!move.type.empty() &&
      std::find(attacker.types.begin(), attacker.types.end(), move.type) != attacker.types.end())
    b.stab = 1.5;
  if (ctx.weather == "RainDance") {
    if (move.type == "Water") b.other *= 1.5;
    if (move.type == "Fire") b.other *= 0.5;
  } else if (ctx.weather == "SunnyDay") {
    if (move.type == "Fire") b.other *= 1.5;
    if (move.type == "Water") b.other *= 0.5;
  }
  if (ctx.screen && !ctx.crit) b.other *= 0.5;
  if (ctx.crit) b.other *= 2.0;
  if (gen >= 4 && attacker.ActiveItem() == "Life Orb") b.other *= 1.3;

  auto at_roll = [&](int roll) {
    double raw = b.base * b.other * b.stab * b.effectiveness * roll / cfg.roll_den;
    return std::max(1, Floor(raw));
  };
  b.min_damage = at_roll(cfg.roll_min);
  b.max_damage = at_roll(cfg.roll_max);
  switch (mode) {
    case RngMode::kMin:
      b.damage = b.min_damage;
      break;
    case RngMode::kMax:
      b.damage = b.max_damage;
      break;
    case RngMode::kExpected: {
      double sum = 0;
      for (int r = cfg.roll_min; r <= cfg.roll_max; ++r) sum += at_roll(r);
      b.damage = sum / (cfg.roll_max - cfg.roll_min + 1);
      break;
    }
    case RngMode::kSampled: {
      int span = cfg.roll_max - cfg.roll_min + 1;
      int offset = static_cast<int>(
          (static_cast<unsigned __int128>(Mix64(rng_key)) * static_cast<unsigned>(span)) >> 64);
      b.damage = at_roll(cfg.roll_min + offset);
      break;
    }
  }
  if (breakdown) *breakdown = b;
  return b.damage / defender.max_hp;
}

}  // namespace battlelog::engine
