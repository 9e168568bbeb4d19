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
#include <set>

#include "battlelog/engine.h"

namespace battlelog::engine {

std::string_view StatusId(Status s) {
  switch (s) {
    case Status::kBurn: return "brn";
    case Status::kParalysis: return "par";
    case Status::kPoison: return "psn";
    case Status::kToxic: return "tox";
    case Status::kSleep: return "slp";
    case Status::kFreeze: return "frz";
    case Status::kNone: break;
  }
  return "";
}

Status ParseStatus(std::string_view id) {
  if (id == "brn") return Status::kBurn;
  if (id == "par") return Status::kParalysis;
  if (id == "psn") return Status::kPoison;
  if (id == "tox") return Status::kToxic;
  if (id == "slp") return Status::kSleep;
  if (id == "frz") return Status::kFreeze;
  return Status::kNone;
}

void ValidateTeam(const data::GameData& data, const data::FormatData& format, const Team& team) {
  auto bad = [&](const std::string& why) { Fail(ErrorCode::kIllegalTeam, format.id + ": " + why); };
  if (team.empty() || team.size() > 6) bad("team must have 1-6 members");
  std::set<std::string> species_seen;
  for (const auto& p : team) {
    const data::SpeciesData* sp = data.FindSpecies(p.species);
    if (!sp) bad("unknown species " + p.species);
    if (!data.SpeciesInFormat(sp->name, format)) bad(sp->name + " is not in the format pool");
    if (!species_seen.insert(sp->name).second) bad("duplicate species " + sp->name);
    if (p.level < 1 || p.level > 100) bad("level out of range for " + sp->name);
    if (p.moves.empty() || p.moves.size() > 4) bad(sp->name + " must know 1-4 moves");
    std::set<std::string> move_seen;
    for (const auto& m : p.moves) {
      if (!data.MoveLegal(*sp, m, format.gen)) bad(sp->name + " cannot learn " + m);
      if (!move_seen.insert(ToId(m)).second) bad("duplicate move " + m);
    }
    if (!p.item.empty() && !data.ItemAllowed(p.item, format.gen))
      bad("item " + p.item + " not allowed");
    if (format.gen >= 3) {
      if (std::find(sp->abilities.begin(), sp->abilities.end(), p.ability) == sp->abilities.end())
        bad(sp->name + " cannot have ability '" + p.ability + "'");
    } else if (!p.ability.empty()) {
      bad("abilities do not exist in this generation");
    }
  }
}

std::array<int, 6> ComputeStats(const data::SpeciesData& species, int level, int gen) {
  std::array<int, 6> base = species.base;
  if (gen == 1 && species.gen1_special) base[3] = base[4] = *species.gen1_special;
  std::array<int, 6> out{};
  for (int i = 0; i < 6; ++i) {
    // Gens 1-2: DV 15 with maximum stat experience. Gens 3-4: IV 31, 84 EVs, neutral nature.
    int core = gen <= 2 ? (base[i] + 15) * 2 + 64 : 2 * base[i] + 31 + 21;
    out[i] = core * level / 100 + (i == 0 ? level + 10 : 5);
  }
  return out;
}

std::string PokemonState::Details() const {
  return spec.level == 100 ? spec.species : spec.species + ", L" + std::to_string(spec.level);
}

PokemonState MakePokemon(const data::GameData& data, const PokemonSpec& spec, int gen) {
  const data::SpeciesData& sp = data.Species(spec.species);
  PokemonState p;
  p.spec = spec;
  p.spec.species = sp.name;
  for (auto& m : p.spec.moves) m = data.Move(m).name;
  std::sort(p.spec.moves.begin(), p.spec.moves.end());
  p.types = sp.types;
  p.stats = ComputeStats(sp, spec.level, gen);
  p.hp = p.max_hp = p.stats[0];
  for (const auto& m : p.spec.moves) p.pp.push_back(data.Move(m).MaxPp());
  return p;
}

bool SideState::AllFainted() const {
  return std::all_of(team.begin(), team.end(), [](const PokemonState& p) { return p.Fainted(); });
}

std::vector<int> SideState::BenchOrder() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(team.size()); ++i)
    if (i != active) out.push_back(i);
  std::sort(out.begin(), out.end(),
            [&](int a, int b) { return team[a].spec.species < team[b].spec.species; });
  return out;
}

bool NeedsChoice(const BattleState& state, Side side) {
  if (state.outcome.Over()) return false;
  return !state.InForceSwitch() || state.force_switch[Index(side)];
}

namespace {

bool AllMovesEmpty(const PokemonState& p) {
  return std::all_of(p.pp.begin(), p.pp.end(), [](int v) { return v <= 0; });
}

}  // namespace

std::vector<int> legal_actions(const BattleState& state, Side side) {
  if (state.outcome.Over()) Fail(ErrorCode::kBattleOver, "battle is over");
  if (!NeedsChoice(state, side)) return {0};
  const SideState& s = state.SideOf(side);
  std::vector<int> out;
  if (!state.InForceSwitch()) {
    const PokemonState& act = s.Active();
    if (AllMovesEmpty(act)) {
      out.push_back(0);
    } else {
      for (int i = 0; i < static_cast<int>(act.pp.size()); ++i)
        if (act.pp[i] > 0) out.push_back(i);
    }
  }
  std::vector<int> bench = s.BenchOrder();
  for (int i = 0; i < static_cast<int>(bench.size()); ++i)
    if (!s.team[bench[i]].Fainted()) out.push_back(kFirstSwitch + i);
  return out;
}

std::optional<std::string> MoveForAction(const BattleState& state, Side side, int action) {
  if (action < 0 || action >= kFirstSwitch) return std::nullopt;
  const PokemonState& act = state.SideOf(side).Active();
  if (AllMovesEmpty(act)) return action == 0 ? std::optional<std::string>("Struggle") : std::nullopt;
  if (action < static_cast<int>(act.spec.moves.size())) return act.spec.moves[action];
  return std::nullopt;
}

std::optional<int> SwitchTarget(const BattleState& state, Side side, int action) {
  if (action < kFirstSwitch || action >= kNumActions) return std::nullopt;
  std::vector<int> bench = state.SideOf(side).BenchOrder();
  int i = action - kFirstSwitch;
  if (i >= static_cast<int>(bench.size())) return std::nullopt;
  return bench[i];
}

SideSnapshot Snapshot(const SideState& side) {
  SideSnapshot s;
  for (const auto& p : side.team) {
    s.hp += p.HpFraction();
    if (p.status != Status::kNone) ++s.statused;
    if (p.Fainted()) ++s.fainted;
  }
  return s;
}

int BattleRng::Below(int n) {
  return static_cast<int>((static_cast<unsigned __int128>(Next()) * static_cast<unsigned>(n)) >> 64);
}

double BattleRng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

double StageMultiplier(int stage) {
  return stage >= 0 ? (2.0 + stage) / 2.0 : 2.0 / (2.0 - stage);
}

double AccuracyStageMultiplier(int stage) {
  return stage >= 0 ? (3.0 + stage) / 3.0 : 3.0 / (3.0 - stage);
}

int EffectiveSpeed(const PokemonState& p) {
  double spe = std::floor(p.stats[5] * StageMultiplier(p.boosts[4]));
  if (p.status == Status::kParalysis) spe = std::floor(spe / 4);
  return std::max(1, static_cast<int>(spe));
}

}  // namespace battlelog::engine
