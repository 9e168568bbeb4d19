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

#include "battlelog/tracker.h"

#include <algorithm>
#include <cmath>

namespace battlelog::engine {

using protocol::ProtocolEvent;

int PublicSide::Find(std::string_view nickname) const {
  for (int i = 0; i < static_cast<int>(roster.size()); ++i)
    if (roster[i].nickname == nickname) return i;
  return -1;
}

int PublicSide::FindSpecies(std::string_view species) const {
  for (int i = 0; i < static_cast<int>(roster.size()); ++i)
    if (roster[i].species == species) return i;
  return -1;
}

Tracker::Tracker(std::shared_ptr<const data::GameData> data) : data_(std::move(data)) {}

namespace {

[[noreturn]] void Inconsistent(const std::string& why) { Fail(ErrorCode::kInconsistentEvent, why); }

std::string TagValue(const protocol::Tags& tags, std::string_view kind) {
  // "[from] item: Leftovers" -> "Leftovers" for kind "item: "
  for (const auto& t : tags) {
    if (t.rfind("[from] ", 0) != 0) continue;
    std::string_view v = std::string_view(t).substr(7);
    if (v.rfind(kind, 0) == 0) return std::string(v.substr(kind.size()));
  }
  return "";
}

}  // namespace

PublicPokemon& Tracker::Resolve(const protocol::PokemonRef& ref, const char* what) {
  PublicSide& s = sides_[Index(ref.side)];
  int i = s.Find(ref.name);
  if (i < 0) Inconsistent(std::string(what) + " names unseen Pokemon " + ref.name);
  return s.roster[i];
}

void Tracker::RevealItem(PublicPokemon& p, const std::string& item) {
  if (!p.item.empty() && p.item != item)
    Fail(ErrorCode::kContradictoryReveal, p.species + " shows two items");
  if (!data_->ItemExists(item))
    Fail(ErrorCode::kUnsupportedMechanic, "item " + item + " is not modelled");
  p.item = item;
}

void Tracker::RevealAbility(PublicPokemon& p, const std::string& ability) {
  if (!p.ability.empty() && p.ability != ability)
    Fail(ErrorCode::kContradictoryReveal, p.species + " shows two abilities");
  p.ability = ability;
}

void Tracker::RevealFromTags(Side side, const protocol::Tags& tags) {
  PublicSide& s = sides_[Index(side)];
  // "[of] p2a: X" names the owner of the revealed effect when it is not the target.
  std::string owner_text;
  for (const auto& t : tags)
    if (t.rfind("[of] ", 0) == 0) owner_text = t.substr(5);
  PublicPokemon* owner = s.active >= 0 ? &s.roster[s.active] : nullptr;
  if (!owner_text.empty()) {
    auto ref = protocol::ParseRef(owner_text);
    if (!ref) Inconsistent("bad [of] tag " + owner_text);
    owner = &Resolve(*ref, "tag");
  }
  if (!owner) return;
  if (std::string item = TagValue(tags, "item: "); !item.empty()) RevealItem(*owner, item);
  if (std::string ability = TagValue(tags, "ability: "); !ability.empty())
    RevealAbility(*owner, ability);
}

void Tracker::OnSwitch(const protocol::SwitchIn& sw, bool drag) {
  PublicSide& s = sides_[Index(sw.pokemon.side)];
  int idx = s.Find(sw.pokemon.name);
  if (idx < 0) {
    if (static_cast<int>(s.roster.size()) >= std::min(s.team_size, 6))
      Inconsistent("more Pokemon revealed than the team holds");
    const data::SpeciesData* sp = data_->FindSpecies(sw.Species());
    if (!sp) Fail(ErrorCode::kUnsupportedMechanic, "species " + sw.Species() + " is not modelled");
    PublicPokemon p;
    p.nickname = sw.pokemon.name;
    p.species = sp->name;
    p.level = sw.Level();
    p.revealed_turn = turn_;
    s.roster.push_back(p);
    idx = static_cast<int>(s.roster.size()) - 1;
  }
  if (s.roster[idx].fainted) Inconsistent("fainted Pokemon switched in");
  if (s.active >= 0) {
    PublicPokemon& old = s.roster[s.active];
    old.boosts = {};
    old.confused = false;
    old.toxic_turns = 0;
    old.last_move.clear();
  }
  s.active = idx;
  PublicPokemon& p = s.roster[idx];
  p.hp_num = sw.hp.numerator;
  p.hp_den = sw.hp.bare ? 100 : sw.hp.denominator;
  p.status = sw.hp.status;
  TurnSummary& sum = current_turn_[Index(sw.pokemon.side)];
  if (!drag && sum.action == "none") sum.action = "switch";
}

void Tracker::OnMove(const protocol::Move& m) {
  const int side = Index(m.user.side);
  PublicSide& s = sides_[side];
  PublicPokemon& p = Resolve(m.user, "move");
  if (s.active < 0 || &s.roster[s.active] != &p) Inconsistent(p.species + " moved while benched");
  if (p.fainted) Inconsistent(p.species + " moved after fainting");
  if (data_->MoveUnsupported(m.move))
    Fail(ErrorCode::kUnsupportedMechanic, "move " + m.move + " is not modelled");
  const data::MoveData* mv = data_->FindMove(m.move);
  if (!mv) Fail(ErrorCode::kUnsupportedMechanic, "move " + m.move + " is not in the tables");
  last_mover_ = side;
  const bool called = protocol::FindTag(m.tags, "[from]").has_value();
  if (called) return;
  p.last_move = mv->name;
  TurnSummary& sum = current_turn_[side];
  sum.action = ToId(mv->name);
  sum.result = "hit";
  if (protocol::FindTag(m.tags, "[miss]")) sum.result = "miss";
  if (protocol::FindTag(m.tags, "[notarget]")) sum.result = "notarget";
  if (mv->name == "Struggle") return;
  if (std::find(p.moves.begin(), p.moves.end(), mv->name) == p.moves.end()) {
    if (p.moves.size() >= 4)
      Fail(ErrorCode::kContradictoryReveal, p.species + " used a fifth distinct move");
    p.moves.push_back(mv->name);
  }
  if (++p.pp_used[mv->name] > mv->MaxPp())
    Inconsistent(p.species + " used " + mv->name + " beyond its PP");
}

void Tracker::OnRaw(const protocol::Raw& r) {
  const std::string& k = r.kind;
  if (data_->MessageUnsupported(k))
    Fail(ErrorCode::kUnsupportedMechanic, "message |" + k + "| is not modelled");
  auto target = [&]() -> PublicPokemon* {
    if (r.args.empty()) return nullptr;
    auto ref = protocol::ParseRef(r.args[0]);
    if (!ref) return nullptr;
    return &Resolve(*ref, k.c_str());
  };
  auto mover = [&]() -> TurnSummary* {
    return last_mover_ < 0 ? nullptr : &current_turn_[last_mover_];
  };
  if (k == "gen" && !r.args.empty()) {
    gen_ = std::clamp(std::atoi(r.args[0].c_str()), 1, 4);
  } else if (k == "-start" || k == "-end") {
    if (r.args.size() < 2) return;
    std::string effect = r.args[1];
    if (effect.rfind("move: ", 0) == 0) effect = effect.substr(6);
    if (data_->VolatileUnsupported(effect))
      Fail(ErrorCode::kUnsupportedMechanic, "volatile " + effect + " is not modelled");
    if (ToId(effect) == "confusion") {
      if (PublicPokemon* p = target()) p->confused = k == "-start";
    }
  } else if (k == "-crit") {
    if (auto* m = mover()) m->crit = true;
  } else if (k == "-supereffective") {
    if (auto* m = mover()) m->effectiveness = "super";
  } else if (k == "-resisted") {
    if (auto* m = mover()) m->effectiveness = "resisted";
  } else if (k == "-immune") {
    if (auto* m = mover()) m->effectiveness = "immune";
    if (PublicPokemon* p = target()) {
      std::string ability = TagValue(protocol::Tags(r.args.begin() + 1, r.args.end()), "ability: ");
      if (!ability.empty()) RevealAbility(*p, ability);
    }
  } else if (k == "-miss") {
    if (auto* m = mover()) m->result = "miss";
  } else if (k == "-fail") {
    if (auto* m = mover()) m->result = "fail";
  } else if (k == "-activate") {
    // Confusion checks happen before the move; the self-hit shows as damage.
  } else if (k == "-ability") {
    if (PublicPokemon* p = target(); p && r.args.size() >= 2) RevealAbility(*p, r.args[1]);
  }
}

void Tracker::apply_event(const ProtocolEvent& e) {
  ++events_seen_;
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        using namespace protocol;
        if constexpr (std::is_same_v<T, Player>) {
          if (sides_[Index(ev.side)].name.empty()) sides_[Index(ev.side)].name = ev.Name();
        } else if constexpr (std::is_same_v<T, TeamSize>) {
          sides_[Index(ev.side)].team_size = ev.size;
        } else if constexpr (std::is_same_v<T, Format>) {
          format_id_ = ToId(ev.name);
          if (const auto* f = data_->FindFormat(format_id_)) gen_ = f->gen;
        } else if constexpr (std::is_same_v<T, Turn>) {
          if (ev.number <= turn_) Inconsistent("turn numbers must increase");
          turn_ = ev.number;
          last_turn_ = current_turn_;
          current_turn_ = {};
          last_mover_ = -1;
        } else if constexpr (std::is_same_v<T, Switch>) {
          OnSwitch(ev, false);
        } else if constexpr (std::is_same_v<T, Drag>) {
          OnSwitch(ev, true);
        } else if constexpr (std::is_same_v<T, Move>) {
          OnMove(ev);
        } else if constexpr (std::is_same_v<T, Damage> || std::is_same_v<T, Heal>) {
          PublicPokemon& p = Resolve(ev.target, "hp change");
          if (p.fainted) Inconsistent("hp change on fainted " + p.species);
          p.hp_num = ev.hp.numerator;
          p.hp_den = ev.hp.bare ? 100 : ev.hp.denominator;
          if (ev.hp.status != "fnt") p.status = ev.hp.status;
          RevealFromTags(ev.target.side, ev.tags);
          if constexpr (std::is_same_v<T, Damage>) {
            auto from = FindTag(ev.tags, "[from]");
            if (from == "confusion") {
              current_turn_[Index(ev.target.side)].result = "confusion";
            } else if (from == "psn" && p.status == "tox") {
              ++p.toxic_turns;
            }
          }
        } else if constexpr (std::is_same_v<T, SetStatus>) {
          PublicPokemon& p = Resolve(ev.target, "status");
          if (p.fainted) Inconsistent("status on fainted " + p.species);
          p.status = ev.status;
          p.sleep_turns = 0;
          p.toxic_turns = 0;
          RevealFromTags(ev.target.side, ev.tags);
          current_turn_[Index(ev.target.side)].status_change = ev.status;
        } else if constexpr (std::is_same_v<T, CureStatus>) {
          PublicPokemon& p = Resolve(ev.target, "cure");
          p.status.clear();
          p.sleep_turns = 0;
          p.toxic_turns = 0;
          RevealFromTags(ev.target.side, ev.tags);
          if (ev.status == "slp" && gen_ == 1 && ev.tags == Tags{"[msg]"})
            current_turn_[Index(ev.target.side)].result = "woke";
        } else if constexpr (std::is_same_v<T, Boost> || std::is_same_v<T, Unboost>) {
          PublicPokemon& p = Resolve(ev.target, "boost");
          auto idx = data::BoostIndex(ev.stat);
          if (!idx) Fail(ErrorCode::kUnsupportedMechanic, "boost of " + ev.stat);
          int sign = std::is_same_v<T, Boost> ? 1 : -1;
          p.boosts[*idx] = std::clamp(p.boosts[*idx] + sign * ev.amount, -6, 6);
          RevealFromTags(ev.target.side, ev.tags);
        } else if constexpr (std::is_same_v<T, Faint>) {
          PublicPokemon& p = Resolve(ev.target, "faint");
          if (p.fainted) Inconsistent(p.species + " fainted twice");
          p.fainted = true;
          p.hp_num = 0;
          p.confused = false;
          current_turn_[Index(ev.target.side)].fainted = true;
        } else if constexpr (std::is_same_v<T, Weather>) {
          if (ev.weather != "none" && !FindTag(ev.tags, "[upkeep]")) {
            auto from = TagValue(ev.tags, "ability: ");
            if (!from.empty()) {
              for (const auto& t : ev.tags) {
                if (t.rfind("[of] ", 0) != 0) continue;
                auto ref = ParseRef(std::string_view(t).substr(5));
                if (ref) RevealAbility(Resolve(*ref, "weather"), from);
              }
            }
          }
          weather_ = ev.weather == "none" ? std::string() : ev.weather;
        } else if constexpr (std::is_same_v<T, SideCondition>) {
          PublicSide& s = sides_[Index(ev.side)];
          std::string name = ev.Name();
          if (name == "Spikes") s.spikes = ev.start ? s.spikes + 1 : 0;
          else if (name == "Reflect") s.reflect = ev.start;
          else if (name == "Light Screen") s.light_screen = ev.start;
          else Fail(ErrorCode::kUnsupportedMechanic, "side condition " + name);
        } else if constexpr (std::is_same_v<T, FieldCondition>) {
          Fail(ErrorCode::kUnsupportedMechanic, "field condition " + ev.condition);
        } else if constexpr (std::is_same_v<T, Item>) {
          PublicPokemon& p = Resolve(ev.target, "item");
          RevealItem(p, ev.item);
          if (ev.ended) p.item_consumed = true;
        } else if constexpr (std::is_same_v<T, Ability>) {
          RevealAbility(Resolve(ev.target, "ability"), ev.ability);
        } else if constexpr (std::is_same_v<T, Cant>) {
          PublicPokemon& p = Resolve(ev.target, "cant");
          if (ev.reason == "slp") ++p.sleep_turns;
          TurnSummary& sum = current_turn_[Index(ev.target.side)];
          sum.result = "cant";
          if (data_->VolatileUnsupported(ev.reason) || data_->MoveUnsupported(ev.reason))
            Fail(ErrorCode::kUnsupportedMechanic, "cant reason " + ev.reason);
        } else if constexpr (std::is_same_v<T, Win>) {
          outcome_.kind = Outcome::Kind::kWin;
          outcome_.winner = ev.winner == sides_[1].name ? Side::kP2 : Side::kP1;
        } else if constexpr (std::is_same_v<T, Tie>) {
          outcome_.kind = Outcome::Kind::kTie;
        } else if constexpr (std::is_same_v<T, Raw>) {
          OnRaw(ev);
        }
      },
      e.kind);
}

const PokemonSpec* PovView::OwnSpec(std::string_view species) const {
  for (const auto& s : *own_team)
    if (s.species == species) return &s;
  return nullptr;
}

const PublicPokemon* PovView::OwnPublic(std::string_view species) const {
  int i = Me().FindSpecies(species);
  return i < 0 ? nullptr : &Me().roster[i];
}

std::string PovView::ActiveSpecies() const {
  const PublicPokemon* a = Me().Active();
  return a ? a->species : std::string();
}

bool PovView::MustSwitch() const {
  const PublicPokemon* a = Me().Active();
  return a && a->fainted;
}

std::vector<std::string> PovView::ActiveMoves() const {
  const PokemonSpec* spec = OwnSpec(ActiveSpecies());
  if (!spec) return {};
  std::vector<std::string> moves;
  for (const auto& m : spec->moves) moves.push_back(tracker->Data().Move(m).name);
  std::sort(moves.begin(), moves.end());
  return moves;
}

int PovView::PpLeft(const std::string& move) const {
  const data::MoveData& mv = tracker->Data().Move(move);
  const PublicPokemon* p = Me().Active();
  int used = 0;
  if (p) {
    auto it = p->pp_used.find(mv.name);
    if (it != p->pp_used.end()) used = it->second;
  }
  return mv.MaxPp() - used;
}

std::vector<std::string> PovView::Bench() const {
  std::vector<std::string> out;
  std::string active = ActiveSpecies();
  for (const auto& s : *own_team)
    if (s.species != active) out.push_back(s.species);
  std::sort(out.begin(), out.end());
  return out;
}

bool PovView::BenchFainted(const std::string& species) const {
  const PublicPokemon* p = OwnPublic(species);
  return p && p->fainted;
}

std::vector<int> PovView::LegalActions() const {
  std::vector<int> out;
  if (!MustSwitch()) {
    std::vector<std::string> moves = ActiveMoves();
    for (int i = 0; i < static_cast<int>(moves.size()); ++i)
      if (PpLeft(moves[i]) > 0) out.push_back(i);
    if (out.empty()) out.push_back(0);
  }
  std::vector<std::string> bench = Bench();
  for (int i = 0; i < static_cast<int>(bench.size()); ++i)
    if (!BenchFainted(bench[i])) out.push_back(kFirstSwitch + i);
  return out;
}

std::optional<std::string> PovView::MoveForAction(int action) const {
  if (action < 0 || action >= kFirstSwitch || MustSwitch()) return std::nullopt;
  std::vector<std::string> moves = ActiveMoves();
  bool empty = std::all_of(moves.begin(), moves.end(),
                           [&](const std::string& m) { return PpLeft(m) <= 0; });
  if (empty) return action == 0 ? std::optional<std::string>("Struggle") : std::nullopt;
  if (action >= static_cast<int>(moves.size())) return std::nullopt;
  return moves[action];
}

std::optional<std::string> PovView::SwitchForAction(int action) const {
  if (action < kFirstSwitch || action >= kNumActions) return std::nullopt;
  std::vector<std::string> bench = Bench();
  int i = action - kFirstSwitch;
  if (i >= static_cast<int>(bench.size())) return std::nullopt;
  return bench[i];
}

PokemonState PovView::ActiveState(Side side) const {
  const data::GameData& data = tracker->Data();
  const PublicSide& s = tracker->side(side);
  const PublicPokemon* pub = s.Active();
  PokemonSpec spec;
  if (side == pov && pub && OwnSpec(pub->species)) {
    spec = *OwnSpec(pub->species);
  } else if (pub) {
    spec.species = pub->species;
    spec.level = pub->level;
    spec.moves = pub->moves;
    spec.item = pub->item_consumed ? std::string() : pub->item;
    spec.ability = pub->ability;
  }
  if (spec.species.empty()) Fail(ErrorCode::kInvalidArgument, "no active Pokemon to describe");
  PokemonState st = MakePokemon(data, spec, tracker->gen());
  if (pub) {
    st.hp = pub->fainted ? 0
                         : std::max(1, static_cast<int>(std::lround(pub->HpFraction() * st.max_hp)));
    st.status = ParseStatus(pub->status);
    st.boosts = pub->boosts;
    st.confusion_turns = pub->confused ? 1 : 0;
    st.item_consumed = pub->item_consumed;
  }
  return st;
}

}  // namespace battlelog::engine
