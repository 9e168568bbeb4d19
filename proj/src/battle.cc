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

using protocol::EventKind;
using protocol::HpStatus;
using protocol::PokemonRef;
using protocol::ProtocolEvent;
using protocol::Raw;
using protocol::Tags;

constexpr int kScreenTurns = 5;
constexpr int kWeatherTurns = 5;
constexpr int kRestTurns = 2;

int PublicPercent(int hp, int max_hp) {
  int v = static_cast<int>(std::lround(100.0 * hp / max_hp));
  if (hp > 0 && v == 0) v = 1;
  if (hp < max_hp && v == 100) v = 99;
  return v;
}

HpStatus PublicHp(const PokemonState& p) {
  if (p.Fainted()) return HpStatus{0, 0, true, "fnt"};
  return HpStatus{PublicPercent(p.hp, p.max_hp), 100, false, std::string(StatusId(p.status))};
}

bool HasType(const PokemonState& p, std::string_view type) {
  return std::find(p.types.begin(), p.types.end(), type) != p.types.end();
}

data::MoveData ConfusionHit() {
  data::MoveData m;
  m.name = "confusion";
  m.type = "???";
  m.category = data::Category::kPhysical;
  m.power = 40;
  return m;
}

class Resolver {
 public:
  Resolver(BattleState& s, std::vector<ProtocolEvent>& out, BattleRng& rng)
      : s_(s), out_(out), rng_(rng), data_(*s.data), cfg_(s.Config()) {
    MarkAnnounced();
  }

  void Emit(EventKind k) { out_.push_back(protocol::MakeEvent(std::move(k))); }
  void EmitRaw(std::string kind, std::vector<std::string> args) {
    Emit(Raw{std::move(kind), std::move(args)});
  }

  PokemonRef Ref(Side side) const { return {side, s_.SideOf(side).Active().spec.species}; }
  std::string RefText(Side side) const { return protocol::FormatRef(Ref(side)); }
  std::string SideLabel(Side side) const {
    return std::string(SideId(side)) + ": " + s_.SideOf(side).name;
  }
  bool Has(const PokemonState& p, std::string_view ability) const {
    return cfg_.abilities && p.spec.ability == ability;
  }

  void Hurt(Side side, int amount, Tags tags) {
    PokemonState& p = s_.SideOf(side).Active();
    p.hp = std::max(0, p.hp - amount);
    Emit(protocol::Damage{{Ref(side), PublicHp(p), std::move(tags)}});
  }

  void Restore(Side side, int amount, Tags tags) {
    PokemonState& p = s_.SideOf(side).Active();
    p.hp = std::min(p.max_hp, p.hp + amount);
    Emit(protocol::Heal{{Ref(side), PublicHp(p), std::move(tags)}});
  }

  void SendOut(Side side, int index) {
    SideState& me = s_.SideOf(side);
    PokemonState& old = me.Active();
    old.boosts = {};
    old.confusion_turns = 0;
    old.toxic_counter = 0;
    old.last_move.clear();
    me.active = index;
    PokemonState& p = me.Active();
    Emit(protocol::Switch{{Ref(side), p.Details(), PublicHp(p), {}}});
    if (me.spikes > 0 && !HasType(p, "Flying") && !Has(p, "Levitate") && !Has(p, "Magic Guard")) {
      static constexpr int kSpikesDen[] = {8, 6, 4};
      Hurt(side, std::max(1, p.max_hp / kSpikesDen[std::min(me.spikes, 3) - 1]), {"[from] Spikes"});
    }
    if (!p.Fainted()) EntryAbility(side);
  }

  void EntryAbility(Side side) {
    PokemonState& p = s_.SideOf(side).Active();
    if (Has(p, "Intimidate")) {
      Side foe = Other(side);
      PokemonState& t = s_.SideOf(foe).Active();
      if (t.Fainted()) return;
      EmitRaw("-ability", {RefText(side), "Intimidate", "boost"});
      data::Boosts drop{};
      drop[0] = -1;
      if (!ApplyBoosts(foe, drop)) EmitRaw("-fail", {RefText(foe), "unboost"});
    } else if (Has(p, "Sand Stream") && s_.field.weather != "Sandstorm") {
      s_.field.weather = "Sandstorm";
      s_.field.weather_turns = kWeatherTurns;
      Emit(protocol::Weather{"Sandstorm", {"[from] ability: Sand Stream", "[of] " + RefText(side)}});
    }
  }

  bool ApplyBoosts(Side side, data::Boosts delta) {
    PokemonState& p = s_.SideOf(side).Active();
    // Gen 1 has a single Special stat, so either half of a special boost moves both.
    if (s_.gen == 1 && (delta[2] == 0) != (delta[3] == 0)) delta[2] = delta[3] = delta[2] + delta[3];
    bool changed = false;
    for (int i = 0; i < 7; ++i) {
      if (delta[i] == 0) continue;
      int next = std::clamp(p.boosts[i] + delta[i], -6, 6);
      int diff = next - p.boosts[i];
      if (diff == 0) continue;
      p.boosts[i] = next;
      changed = true;
      std::string stat(data::kBoostNames[i]);
      if (diff > 0) Emit(protocol::Boost{{Ref(side), stat, diff, {}}});
      else Emit(protocol::Unboost{{Ref(side), stat, -diff, {}}});
    }
    return changed;
  }

  // Returns false when the status could not be applied at all.
  bool TryStatus(Side side, Status st, bool from_foe) {
    SideState& me = s_.SideOf(side);
    PokemonState& p = me.Active();
    if (p.Fainted() || p.status != Status::kNone) return false;
    if (st == Status::kBurn && HasType(p, "Fire")) return false;
    if (st == Status::kFreeze && HasType(p, "Ice")) return false;
    if ((st == Status::kPoison || st == Status::kToxic) &&
        (HasType(p, "Poison") || HasType(p, "Steel") || Has(p, "Immunity")))
      return false;
    if (st == Status::kSleep && from_foe) {
      for (const auto& q : me.team)
        if (!q.Fainted() && q.status == Status::kSleep && q.slept_by_foe) return false;
    }
    p.status = st;
    p.toxic_counter = 0;
    if (st == Status::kSleep) {
      p.sleep_turns = cfg_.sleep_min + rng_.Below(cfg_.sleep_max - cfg_.sleep_min + 1);
      p.slept_by_foe = from_foe;
    }
    Emit(protocol::SetStatus{{Ref(side), std::string(StatusId(st)), {}}});
    std::string item = p.ActiveItem();
    if (cfg_.items && (item == "Lum Berry" || item == "Miracle Berry")) {
      p.item_consumed = true;
      Emit(protocol::Item{Ref(side), item, true, {"[eat]"}});
      Emit(protocol::CureStatus{{Ref(side), std::string(StatusId(st)), {"[msg]"}}});
      p.status = Status::kNone;
      p.sleep_turns = 0;
      p.slept_by_foe = false;
    }
    return true;
  }

  // Status, freeze, paralysis and confusion checks; false when the turn is lost.
  bool CanAct(Side side) {
    PokemonState& p = s_.SideOf(side).Active();
    if (p.status == Status::kSleep) {
      if (--p.sleep_turns <= 0) {
        p.status = Status::kNone;
        p.sleep_turns = 0;
        p.slept_by_foe = false;
        Emit(protocol::CureStatus{{Ref(side), "slp", {"[msg]"}}});
        if (s_.gen == 1) return false;
      } else {
        Emit(protocol::Cant{Ref(side), "slp", {}});
        return false;
      }
    } else if (p.status == Status::kFreeze) {
      if (rng_.Chance(cfg_.thaw_chance)) {
        p.status = Status::kNone;
        Emit(protocol::CureStatus{{Ref(side), "frz", {"[msg]"}}});
      } else {
        Emit(protocol::Cant{Ref(side), "frz", {}});
        return false;
      }
    }
    if (p.status == Status::kParalysis && rng_.Below(4) == 0) {
      Emit(protocol::Cant{Ref(side), "par", {}});
      return false;
    }
    if (p.confusion_turns > 0) {
      if (--p.confusion_turns == 0) {
        EmitRaw("-end", {RefText(side), "confusion"});
      } else {
        EmitRaw("-activate", {RefText(side), "confusion"});
        if (rng_.Below(2) == 0) {
          DamageBreakdown b;
          DamageContext ctx{s_.gen, "", false, false};
          damage_calc(data_, p, p, ConfusionHit(), ctx, RngMode::kSampled, rng_.Next(), &b);
          Hurt(side, std::min(p.hp, static_cast<int>(b.damage)), {"[from] confusion"});
          return false;
        }
      }
    }
    return true;
  }

  void UseMove(Side side, int action) {
    SideState& me = s_.SideOf(side);
    PokemonState& user = me.Active();
    if (user.Fainted() || !CanAct(side)) return;
    const data::MoveData* mv = nullptr;
    bool empty = std::all_of(user.pp.begin(), user.pp.end(), [](int v) { return v <= 0; });
    if (empty) {
      mv = &data_.Struggle();
    } else {
      mv = &data_.Move(user.spec.moves[action]);
      --user.pp[action];
    }
    user.last_move = mv->name;
    const Side foe = Other(side);
    PokemonState& target = s_.SideOf(foe).Active();
    const bool hits_foe = mv->IsDamaging() || !mv->status.empty() ||
                          !mv->volatile_status.empty() ||
                          std::any_of(mv->boosts.begin(), mv->boosts.end(),
                                      [](int v) { return v != 0; }) ||
                          (!mv->side_condition.empty() && !mv->side_condition_on_self);
    const std::string target_text = hits_foe ? RefText(foe) : RefText(side);
    if (hits_foe && target.Fainted()) {
      Emit(protocol::Move{Ref(side), mv->name, target_text, {"[notarget]"}});
      EmitRaw("-notarget", {RefText(side)});
      return;
    }
    const int accuracy = mv->AccuracyIn(s_.gen);
    if (hits_foe && accuracy > 0 && mv->side_condition.empty()) {
      double chance = accuracy * AccuracyStageMultiplier(user.boosts[5]) /
                      AccuracyStageMultiplier(target.boosts[6]);
      if (rng_.Uniform() * 100.0 >= chance) {
        Emit(protocol::Move{Ref(side), mv->name, target_text, {"[miss]"}});
        EmitRaw("-miss", {RefText(side), RefText(foe)});
        return;
      }
    }
    Emit(protocol::Move{Ref(side), mv->name, target_text, {}});
    if (mv->IsDamaging()) {
      Attack(side, *mv);
    } else {
      StatusMove(side, *mv);
    }
  }

  void Attack(Side side, const data::MoveData& mv) {
    const Side foe = Other(side);
    PokemonState& user = s_.SideOf(side).Active();
    PokemonState& target = s_.SideOf(foe).Active();
    const SideState& foe_side = s_.SideOf(foe);
    bool crit = false;
    if (s_.gen == 1) {
      crit = rng_.Below(256) < data_.Species(user.spec.species).base[5] / 2;
    } else {
      crit = rng_.Below(16) == 0;
    }
    bool physical = IsPhysical(mv, s_.gen);
    DamageContext ctx{s_.gen, s_.field.weather,
                      physical ? foe_side.reflect_turns > 0 : foe_side.light_screen_turns > 0,
                      crit};
    DamageBreakdown b;
    damage_calc(data_, user, target, mv, ctx, RngMode::kSampled, rng_.Next(), &b);
    if (b.effectiveness == 0.0) {
      if (Has(target, "Levitate") && mv.type == "Ground")
        EmitRaw("-immune", {RefText(foe), "[from] ability: Levitate"});
      else
        EmitRaw("-immune", {RefText(foe)});
      return;
    }
    int dealt = std::min(target.hp, static_cast<int>(b.damage));
    if (crit) EmitRaw("-crit", {RefText(foe)});
    if (b.effectiveness > 1.0) EmitRaw("-supereffective", {RefText(foe)});
    if (b.effectiveness < 1.0) EmitRaw("-resisted", {RefText(foe)});
    Hurt(foe, dealt, {});
    if (mv.recoil > 0 && !Has(user, "Magic Guard") && dealt > 0)
      Hurt(side, std::max(1, static_cast<int>(dealt * mv.recoil)), {"[from] Recoil"});
    if (cfg_.items && user.ActiveItem() == "Life Orb" && !user.Fainted() &&
        !Has(user, "Magic Guard"))
      Hurt(side, std::max(1, user.max_hp / 10), {"[from] item: Life Orb"});
    if (mv.secondary && !target.Fainted()) {
      int chance = mv.secondary->chance * (Has(user, "Serene Grace") ? 2 : 1);
      if (rng_.Below(100) < chance) {
        const data::Secondary& sec = *mv.secondary;
        if (!sec.status.empty()) TryStatus(foe, ParseStatus(sec.status), true);
        ApplyBoosts(foe, sec.boosts);
        if (!user.Fainted()) ApplyBoosts(side, sec.self_boosts);
      }
    }
  }

  void StatusMove(Side side, const data::MoveData& mv) {
    const Side foe = Other(side);
    SideState& me = s_.SideOf(side);
    PokemonState& user = me.Active();
    PokemonState& target = s_.SideOf(foe).Active();
    auto fail = [&](Side who) { EmitRaw("-fail", {RefText(who)}); };
    if (!mv.status.empty()) {
      if (mv.type == "Electric" && data_.Effectiveness("Electric", target.types, s_.gen) == 0.0) {
        EmitRaw("-immune", {RefText(foe)});
      } else if (!TryStatus(foe, ParseStatus(mv.status), true)) {
        fail(foe);
      }
    } else if (mv.volatile_status == "confusion") {
      if (target.confusion_turns > 0) {
        fail(foe);
      } else {
        target.confusion_turns = 2 + rng_.Below(4);
        EmitRaw("-start", {RefText(foe), "confusion"});
      }
    } else if (std::any_of(mv.boosts.begin(), mv.boosts.end(), [](int v) { return v != 0; })) {
      if (!ApplyBoosts(foe, mv.boosts)) fail(foe);
    } else if (std::any_of(mv.self_boosts.begin(), mv.self_boosts.end(),
                           [](int v) { return v != 0; })) {
      if (!ApplyBoosts(side, mv.self_boosts)) fail(side);
    } else if (mv.rest) {
      if (user.hp == user.max_hp || user.status == Status::kSleep) {
        fail(side);
      } else {
        user.status = Status::kSleep;
        user.sleep_turns = kRestTurns;
        user.slept_by_foe = false;
        user.toxic_counter = 0;
        Emit(protocol::SetStatus{{Ref(side), "slp", {"[from] move: Rest"}}});
        Restore(side, user.max_hp, {"[silent]"});
      }
    } else if (mv.heal > 0) {
      if (user.hp == user.max_hp) fail(side);
      else Restore(side, static_cast<int>(user.max_hp * mv.heal), {});
    } else if (mv.side_condition == "Spikes") {
      SideState& other = s_.SideOf(foe);
      if (other.spikes >= cfg_.spikes_max_layers) {
        fail(foe);
      } else {
        ++other.spikes;
        Emit(protocol::SideCondition{foe, SideLabel(foe), "Spikes", true, {}});
      }
    } else if (mv.side_condition == "Reflect" || mv.side_condition == "Light Screen") {
      int& turns = mv.side_condition == "Reflect" ? me.reflect_turns : me.light_screen_turns;
      if (turns > 0) {
        fail(side);
      } else {
        turns = kScreenTurns;
        Emit(protocol::SideCondition{side, SideLabel(side), mv.side_condition, true, {}});
      }
    } else if (!mv.weather.empty()) {
      if (!cfg_.weather || s_.field.weather == mv.weather) {
        fail(side);
      } else {
        s_.field.weather = mv.weather;
        s_.field.weather_turns = kWeatherTurns;
        Emit(protocol::Weather{mv.weather, {}});
      }
    } else {
      fail(side);
    }
  }

  // Announces new faints and settles the outcome. True when the battle ended.
  bool SettleFaints() {
    for (Side side : {Side::kP1, Side::kP2}) {
      SideState& me = s_.SideOf(side);
      PokemonState& p = me.Active();
      auto& seen = announced_[Index(side)];
      if (p.Fainted() && !seen[me.active]) {
        seen[me.active] = true;
        p.confusion_turns = 0;
        p.slept_by_foe = false;
        Emit(protocol::Faint{Ref(side), {}});
      }
    }
    bool out1 = s_.sides[0].AllFainted();
    bool out2 = s_.sides[1].AllFainted();
    if (!out1 && !out2) return false;
    if (out1 && out2) {
      s_.outcome = {Outcome::Kind::kTie, Side::kP1};
      Emit(protocol::Tie{});
    } else {
      Side winner = out1 ? Side::kP2 : Side::kP1;
      s_.outcome = {Outcome::Kind::kWin, winner};
      Emit(protocol::Win{s_.SideOf(winner).name});
    }
    return true;
  }

  void Residual() {
    FieldState& f = s_.field;
    if (!f.weather.empty()) {
      if (--f.weather_turns <= 0) {
        f.weather.clear();
        Emit(protocol::Weather{"none", {}});
      } else {
        Emit(protocol::Weather{f.weather, {"[upkeep]"}});
        if (f.weather == "Sandstorm") {
          for (Side side : {Side::kP1, Side::kP2}) {
            PokemonState& p = s_.SideOf(side).Active();
            if (p.Fainted() || HasType(p, "Rock") || HasType(p, "Ground") || HasType(p, "Steel") ||
                Has(p, "Magic Guard"))
              continue;
            Hurt(side, std::max(1, p.max_hp / 16), {"[from] Sandstorm"});
          }
        }
      }
    }
    for (Side side : {Side::kP1, Side::kP2}) {
      PokemonState& p = s_.SideOf(side).Active();
      if (p.Fainted()) continue;
      if (cfg_.items && p.ActiveItem() == "Leftovers" && p.hp < p.max_hp)
        Restore(side, std::max(1, p.max_hp / 16), {"[from] item: Leftovers"});
      if (Has(p, "Magic Guard")) continue;
      if (p.status == Status::kBurn) {
        Hurt(side, std::max(1, p.max_hp / cfg_.residual_den), {"[from] brn"});
      } else if (p.status == Status::kPoison) {
        Hurt(side, std::max(1, p.max_hp / cfg_.residual_den), {"[from] psn"});
      } else if (p.status == Status::kToxic) {
        p.toxic_counter = std::min(p.toxic_counter + 1, 15);
        Hurt(side, std::max(1, p.max_hp * p.toxic_counter / 16), {"[from] psn"});
      }
    }
    for (Side side : {Side::kP1, Side::kP2}) {
      SideState& me = s_.SideOf(side);
      if (me.reflect_turns > 0 && --me.reflect_turns == 0)
        Emit(protocol::SideCondition{side, SideLabel(side), "Reflect", false, {}});
      if (me.light_screen_turns > 0 && --me.light_screen_turns == 0)
        Emit(protocol::SideCondition{side, SideLabel(side), "Light Screen", false, {}});
    }
  }

  // After the turn body: forced replacements or the next turn header.
  void CloseTurn() {
    bool need = false;
    for (Side side : {Side::kP1, Side::kP2}) {
      const SideState& me = s_.SideOf(side);
      s_.force_switch[Index(side)] = me.Active().Fainted() && !me.AllFainted();
      need = need || s_.force_switch[Index(side)];
    }
    if (need) return;
    if (s_.turn >= s_.max_turns) {
      s_.outcome = {Outcome::Kind::kTie, Side::kP1};
      Emit(protocol::Tie{});
      return;
    }
    ++s_.turn;
    Emit(protocol::Turn{s_.turn});
  }

  // Pokemon already fainted before this step were announced earlier.
  void MarkAnnounced() {
    for (int i = 0; i < 2; ++i) {
      announced_[i].clear();
      for (const auto& p : s_.sides[i].team) announced_[i].push_back(p.Fainted());
    }
  }

  BattleRng& rng() { return rng_; }

 private:
  BattleState& s_;
  std::vector<ProtocolEvent>& out_;
  BattleRng& rng_;
  const data::GameData& data_;
  const data::GenConfig& cfg_;
  std::array<std::vector<bool>, 2> announced_;
};

}  // namespace

BattleState NewBattle(std::shared_ptr<const data::GameData> data, const BattleConfig& config,
                      std::vector<ProtocolEvent>* events) {
  const data::FormatData& format = data->Format(config.format_id);
  BattleState s;
  s.data = data;
  s.format_id = format.id;
  s.gen = format.gen;
  s.seed = config.seed;
  s.max_turns = config.max_turns;
  for (int i = 0; i < 2; ++i) {
    ValidateTeam(*data, format, config.teams[i]);
    s.sides[i].name = config.names[i];
    for (const auto& spec : config.teams[i]) s.sides[i].team.push_back(MakePokemon(*data, spec, s.gen));
  }
  std::vector<ProtocolEvent> local;
  std::vector<ProtocolEvent>& out = events ? *events : local;
  auto emit = [&](EventKind k) { out.push_back(protocol::MakeEvent(std::move(k))); };
  for (Side side : {Side::kP1, Side::kP2}) emit(protocol::Player{side, {s.SideOf(side).name, ""}});
  for (Side side : {Side::kP1, Side::kP2})
    emit(protocol::TeamSize{side, static_cast<int>(s.SideOf(side).team.size())});
  emit(Raw{"gametype", {"singles"}});
  emit(Raw{"gen", {std::to_string(s.gen)}});
  emit(protocol::Format{format.name});
  emit(Raw{"rule", {"Sleep Clause Mod: Limit one foe put to sleep"}});
  emit(Raw{"", {}});
  emit(Raw{"start", {}});
  BattleRng rng(s.seed, 0);
  Resolver r(s, out, rng);
  for (Side side : {Side::kP1, Side::kP2}) {
    const PokemonState& p = s.SideOf(side).Active();
    r.Emit(protocol::Switch{{r.Ref(side), p.Details(), PublicHp(p), {}}});
  }
  for (Side side : {Side::kP1, Side::kP2}) r.EntryAbility(side);
  s.turn = 1;
  r.Emit(protocol::Turn{1});
  return s;
}

StepResult step(BattleState& state, int choice_p1, int choice_p2) {
  if (state.outcome.Over()) Fail(ErrorCode::kBattleOver, "battle is over");
  StepResult result;
  for (int i = 0; i < 2; ++i) result.before[i] = Snapshot(state.sides[i]);
  BattleRng rng(state.seed, ++state.step_count);
  std::array<int, 2> choice{choice_p1, choice_p2};
  for (Side side : {Side::kP1, Side::kP2}) {
    int i = Index(side);
    if (!NeedsChoice(state, side)) continue;
    std::vector<int> legal = legal_actions(state, side);
    if (std::find(legal.begin(), legal.end(), choice[i]) == legal.end()) {
      result.replaced[i] = true;
      choice[i] = legal[rng.Below(static_cast<int>(legal.size()))];
    }
    result.used[i] = choice[i];
  }
  Resolver r(state, result.events, rng);

  if (state.InForceSwitch()) {
    std::array<bool, 2> switching = state.force_switch;
    state.force_switch = {false, false};
    for (Side side : {Side::kP1, Side::kP2}) {
      if (!switching[Index(side)]) continue;
      r.SendOut(side, *SwitchTarget(state, side, choice[Index(side)]));
    }
    if (!r.SettleFaints()) r.CloseTurn();
    for (int i = 0; i < 2; ++i) result.after[i] = Snapshot(state.sides[i]);
    return result;
  }

  struct Pending {
    Side side;
    int action;
    bool is_switch;
    int priority;
    int speed;
    int tiebreak;
  };
  std::vector<Pending> order;
  for (Side side : {Side::kP1, Side::kP2}) {
    int a = choice[Index(side)];
    const PokemonState& act = state.SideOf(side).Active();
    Pending p{side, a, a >= kFirstSwitch, 0, EffectiveSpeed(act), 0};
    if (!p.is_switch) {
      auto name = MoveForAction(state, side, a);
      p.priority = state.data->Move(*name).priority;
    }
    order.push_back(p);
  }
  order[0].tiebreak = rng.Below(2);
  order[1].tiebreak = 1 - order[0].tiebreak;
  std::sort(order.begin(), order.end(), [](const Pending& a, const Pending& b) {
    if (a.is_switch != b.is_switch) return a.is_switch;
    if (a.priority != b.priority) return a.priority > b.priority;
    if (a.speed != b.speed) return a.speed > b.speed;
    return a.tiebreak > b.tiebreak;
  });
  for (const Pending& p : order) {
    if (p.is_switch) {
      r.SendOut(p.side, *SwitchTarget(state, p.side, p.action));
    } else {
      r.UseMove(p.side, p.action);
    }
    if (r.SettleFaints()) break;
  }
  if (!state.outcome.Over()) {
    r.Residual();
    if (!r.SettleFaints()) {
      r.EmitRaw("upkeep", {});
      r.CloseTurn();
    }
  }
  for (int i = 0; i < 2; ++i) result.after[i] = Snapshot(state.sides[i]);
  return result;
}

}  // namespace battlelog::engine
