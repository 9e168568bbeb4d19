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

#ifndef BATTLELOG_TRACKER_H_
#define BATTLELOG_TRACKER_H_

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "battlelog/data.h"
#include "battlelog/engine.h"
#include "battlelog/protocol.h"

namespace battlelog::engine {

// What a spectator knows about one Pokemon.
struct PublicPokemon {
  std::string nickname;
  std::string species;
  int level = 100;
  int hp_num = 100;
  int hp_den = 100;
  bool fainted = false;
  std::string status;  // protocol id; kept after fainting
  data::Boosts boosts{};
  bool confused = false;
  int sleep_turns = 0;  // turns observed asleep
  int toxic_turns = 0;
  std::vector<std::string> moves;  // in reveal order
  std::string last_move;
  std::map<std::string, int> pp_used;
  std::string item;
  bool item_consumed = false;
  std::string ability;
  int revealed_turn = 0;

  double HpFraction() const { return fainted ? 0.0 : static_cast<double>(hp_num) / hp_den; }
};

struct PublicSide {
  std::string name;
  int team_size = 6;
  std::vector<PublicPokemon> roster;  // in reveal order
  int active = -1;
  int spikes = 0;
  bool reflect = false;
  bool light_screen = false;

  const PublicPokemon* Active() const { return active < 0 ? nullptr : &roster[active]; }
  int Find(std::string_view nickname) const;
  int FindSpecies(std::string_view species) const;
};

// One side's part of the previous turn, as shown to spectators.
struct TurnSummary {
  std::string action = "none";  // move id, "switch", or "none"
  std::string result = "none";  // hit, miss, fail, cant, notarget, confusion
  std::string effectiveness = "none";  // super, resisted, immune, neutral
  bool crit = false;
  std::string status_change = "none";
  bool fainted = false;
};

// Spectator-view state rebuilt from protocol events alone.
class Tracker {
 public:
  explicit Tracker(std::shared_ptr<const data::GameData> data);

  // Throws InconsistentEvent, UnsupportedMechanic or ContradictoryReveal.
  void apply_event(const protocol::ProtocolEvent& e);

  const data::GameData& Data() const { return *data_; }
  int turn() const { return turn_; }
  int gen() const { return gen_; }
  const std::string& format_id() const { return format_id_; }
  const std::string& weather() const { return weather_; }
  const PublicSide& side(Side s) const { return sides_[Index(s)]; }
  const TurnSummary& last_turn(Side s) const { return last_turn_[Index(s)]; }
  const Outcome& outcome() const { return outcome_; }
  size_t events_seen() const { return events_seen_; }

 private:
  PublicPokemon& Resolve(const protocol::PokemonRef& ref, const char* what);
  void RevealFromTags(Side side, const protocol::Tags& tags);
  void RevealItem(PublicPokemon& p, const std::string& item);
  void RevealAbility(PublicPokemon& p, const std::string& ability);
  void OnSwitch(const protocol::SwitchIn& s, bool drag);
  void OnMove(const protocol::Move& m);
  void OnRaw(const protocol::Raw& r);

  std::shared_ptr<const data::GameData> data_;
  int gen_ = 1;
  std::string format_id_;
  int turn_ = 0;
  std::string weather_;
  std::array<PublicSide, 2> sides_;
  std::array<TurnSummary, 2> last_turn_;
  std::array<TurnSummary, 2> current_turn_;
  int last_mover_ = -1;
  Outcome outcome_;
  size_t events_seen_ = 0;
};

// One player's view: everything public plus that player's own team sheet.
struct PovView {
  Side pov = Side::kP1;
  const Tracker* tracker = nullptr;
  const Team* own_team = nullptr;

  const PublicSide& Me() const { return tracker->side(pov); }
  const PublicSide& Foe() const { return tracker->side(Other(pov)); }
  const PokemonSpec* OwnSpec(std::string_view species) const;
  const PublicPokemon* OwnPublic(std::string_view species) const;
  std::string ActiveSpecies() const;
  bool MustSwitch() const;
  // Own active moves in action order (sorted by name).
  std::vector<std::string> ActiveMoves() const;
  int PpLeft(const std::string& move) const;
  // Own non-active species in action order.
  std::vector<std::string> Bench() const;
  bool BenchFainted(const std::string& species) const;
  // Same result as engine::legal_actions for the side this view belongs to.
  std::vector<int> LegalActions() const;
  std::optional<std::string> MoveForAction(int action) const;
  std::optional<std::string> SwitchForAction(int action) const;
  // Best available battle-state estimate of an active Pokemon for damage math.
  PokemonState ActiveState(Side side) const;
};

}  // namespace battlelog::engine

#endif  // BATTLELOG_TRACKER_H_
