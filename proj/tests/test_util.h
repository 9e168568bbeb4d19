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

#ifndef BATTLELOG_TESTS_TEST_UTIL_H_
#define BATTLELOG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <array>
#include <memory>
#include <utility>
#include <string>
#include <vector>

#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/engine.h"
#include "battlelog/protocol.h"

namespace battlelog::testing {

// Random legal team: distinct species from the pool, up to four legal moves each.
inline engine::Team RandomTeam(const data::GameData& data, const std::string& format_id,
                               uint64_t seed, int size = 6) {
  const data::FormatData& f = data.Format(format_id);
  SeededRng rng(seed);
  std::vector<std::string> pool = f.pool;
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i) std::swap(pool[i], pool[rng.Below(i + 1)]);
  std::vector<std::string> items = data.ItemsForGen(f.gen);
  engine::Team team;
  for (int i = 0; i < size && i < static_cast<int>(pool.size()); ++i) {
    const data::SpeciesData& sp = data.Species(pool[i]);
    std::vector<std::string> moves;
    for (const auto& m : sp.movepool)
      if (data.MoveLegal(sp, m, f.gen)) moves.push_back(m);
    for (int j = static_cast<int>(moves.size()) - 1; j > 0; --j)
      std::swap(moves[j], moves[rng.Below(j + 1)]);
    moves.resize(std::min<size_t>(4, moves.size()));
    engine::PokemonSpec spec;
    spec.species = sp.name;
    spec.moves = moves;
    if (!items.empty() && rng.Below(4) != 0) spec.item = items[rng.Below(static_cast<int>(items.size()))];
    if (f.gen >= 3) spec.ability = sp.abilities[rng.Below(static_cast<int>(sp.abilities.size()))];
    team.push_back(spec);
  }
  return team;
}

inline std::string Join(const std::vector<protocol::ProtocolEvent>& events) {
  std::string out;
  for (const auto& e : events) out += protocol::serialize_event(e) + "\n";
  return out;
}

// One self-play battle between uniformly random legal players.
struct RecordedBattle {
  std::vector<protocol::ProtocolEvent> events;
  std::array<engine::Team, 2> teams;
  // Per side, every choice made: the action index and the move or species it named.
  std::array<std::vector<std::pair<int, std::string>>, 2> choices;
};

inline RecordedBattle RandomBattle(std::shared_ptr<const data::GameData> data,
                                   const std::string& format_id, uint64_t seed,
                                   int team_size = 6, int max_turns = engine::kDefaultMaxTurns) {
  RecordedBattle rb;
  engine::BattleConfig cfg;
  cfg.format_id = format_id;
  cfg.seed = seed;
  cfg.max_turns = max_turns;
  cfg.teams = {RandomTeam(*data, format_id, seed * 2 + 1, team_size),
               RandomTeam(*data, format_id, seed * 2 + 2, team_size)};
  rb.teams = cfg.teams;
  engine::BattleState st = engine::NewBattle(data, cfg, &rb.events);
  SeededRng rng(seed ^ 0xabcdefULL);
  while (!st.outcome.Over()) {
    std::array<int, 2> pick{0, 0};
    for (Side s : {Side::kP1, Side::kP2}) {
      if (!engine::NeedsChoice(st, s)) continue;
      std::vector<int> legal = engine::legal_actions(st, s);
      int a = legal[rng.Below(static_cast<int>(legal.size()))];
      pick[Index(s)] = a;
      std::string name;
      if (auto m = engine::MoveForAction(st, s, a)) name = *m;
      else if (auto t = engine::SwitchTarget(st, s, a)) name = st.SideOf(s).team[*t].spec.species;
      rb.choices[Index(s)].push_back({a, name});
    }
    engine::StepResult r = engine::step(st, pick[0], pick[1]);
    rb.events.insert(rb.events.end(), r.events.begin(), r.events.end());
  }
  return rb;
}

}  // namespace battlelog::testing

#endif  // BATTLELOG_TESTS_TEST_UTIL_H_
