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

#include "battlelog/agents.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "battlelog/data.h"
#include "json.hpp"

namespace battlelog::agents {
namespace {

using engine::PovView;
using nlohmann::json;

constexpr double kTieEpsilon = 1e-12;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ParseJson(const std::string& text, const char* what) {
  try {
    json j = json::parse(text);
    if (j.value("schema_version", 0) != 1)
      Fail(ErrorCode::kSchemaMismatch, std::string(what) + ": unsupported schema_version");
    return j;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string(what) + ": " + e.what());
  }
}

// Splits the legal set into move and switch actions.
void Split(const std::vector<int>& legal, std::vector<int>* moves, std::vector<int>* switches) {
  for (int a : legal) (a < engine::kFirstSwitch ? moves : switches)->push_back(a);
}

const data::MoveData* MoveOf(const PovView& view, int action) {
  std::optional<std::string> m = view.MoveForAction(action);
  if (!m) return nullptr;
  const data::GameData& data = view.tracker->Data();
  return ToId(*m) == "struggle" ? &data.Struggle() : &data.Move(*m);
}

std::vector<std::string> TypesOf(const data::GameData& data, const std::string& species) {
  const data::SpeciesData* sp = data.FindSpecies(species);
  return sp ? sp->types : std::vector<std::string>{};
}

std::vector<std::string> OppTypes(const PovView& view) {
  const engine::PublicPokemon* opp = view.Foe().Active();
  return opp ? TypesOf(view.tracker->Data(), opp->species) : std::vector<std::string>{};
}

double SwitchMatchup(const PovView& view, int action) {
  std::optional<std::string> sp = view.SwitchForAction(action);
  if (!sp) return 0.0;
  const data::GameData& data = view.tracker->Data();
  return TypeMatchup(data, TypesOf(data, *sp), OppTypes(view), view.tracker->gen());
}

// Highest-scoring action; ties go to the lowest index, which is the
// alphabetically first move or species.
int ArgmaxFirst(const std::vector<int>& actions, const std::function<double(int)>& score) {
  int best = actions.front();
  double best_score = score(best);
  for (size_t i = 1; i < actions.size(); ++i) {
    double s = score(actions[i]);
    if (s > best_score + kTieEpsilon) {
      best = actions[i];
      best_score = s;
    }
  }
  return best;
}

int Uniform(const std::vector<int>& actions, SeededRng& rng) {
  return actions[rng.Below(static_cast<int>(actions.size()))];
}

// True when the move raises some stat that is still below `cap`.
bool BoostUseful(const PovView& view, const data::MoveData& m, int cap = 6) {
  if (!m.IsBoost()) return false;
  const engine::PublicPokemon* own = view.Me().Active();
  for (size_t i = 0; i < m.self_boosts.size(); ++i)
    if (m.self_boosts[i] > 0 && (!own || own->boosts[i] < cap)) return true;
  return false;
}

// Whether raising stat `i` helps the active: offensive stats need a move that
// uses them, speed only matters when the foe is at least as fast.
bool StatMatters(const PovView& view, int i) {
  const data::GameData& data = view.tracker->Data();
  const int gen = view.tracker->gen();
  if (i == 0 || i == 2) {
    for (const auto& name : view.ActiveMoves()) {
      const data::MoveData* m = data.FindMove(name);
      if (m && m->IsDamaging() && engine::IsPhysical(*m, gen) == (i == 0)) return true;
    }
    return false;
  }
  if (i == 4) {
    const data::SpeciesData* own = data.FindSpecies(view.ActiveSpecies());
    const engine::PublicPokemon* foe = view.Foe().Active();
    const data::SpeciesData* opp = foe ? data.FindSpecies(foe->species) : nullptr;
    return !own || !opp || opp->base[5] >= own->base[5];
  }
  return true;
}

// A boost worth a turn: some raised stat is below `cap` and matters.
bool BoostPaysOff(const PovView& view, const data::MoveData& m, int cap) {
  if (!m.IsBoost()) return false;
  const engine::PublicPokemon* own = view.Me().Active();
  for (size_t i = 0; i < m.self_boosts.size(); ++i)
    if (m.self_boosts[i] > 0 && (!own || own->boosts[i] < cap) &&
        StatMatters(view, static_cast<int>(i)))
      return true;
  return false;
}

double OwnHp(const PovView& view) {
  const engine::PublicPokemon* own = view.Me().Active();
  return own ? own->HpFraction() : 0.0;
}

class RandomBaseline : public Agent {
 public:
  std::string name() const override { return "RandomBaseline"; }
  bool deterministic() const override { return false; }
  int choose_action(const PovView&, const std::vector<int>& legal, SeededRng& rng) const override {
    return Uniform(legal, rng);
  }
};

class Grunt : public Agent {
 public:
  std::string name() const override { return "Grunt"; }
  bool deterministic() const override { return true; }
  int choose_action(const PovView& view, const std::vector<int>& legal,
                    SeededRng&) const override {
    std::vector<int> moves, switches;
    Split(legal, &moves, &switches);
    if (moves.empty() || view.MustSwitch())
      return ArgmaxFirst(switches.empty() ? legal : switches,
                         [&](int a) { return SwitchMatchup(view, a); });
    return ArgmaxFirst(moves, [&](int a) {
      const data::MoveData* m = MoveOf(view, a);
      return m ? ExpectedDamage(view, m->name) : 0.0;
    });
  }
};

class GymLeader : public Agent {
 public:
  explicit GymLeader(GymLeaderConfig c) : config_(c) {}
  std::string name() const override { return "GymLeader"; }
  bool deterministic() const override { return true; }
  int choose_action(const PovView& view, const std::vector<int>& legal,
                    SeededRng& rng) const override {
    if (!view.MustSwitch()) {
      const double hp = OwnHp(view);
      for (int a : legal) {
        if (a >= engine::kFirstSwitch) break;
        const data::MoveData* m = MoveOf(view, a);
        if (!m) continue;
        if (hp >= config_.boost_hp && BoostPaysOff(view, *m, config_.boost_stage_cap)) return a;
      }
      for (int a : legal) {
        if (a >= engine::kFirstSwitch) break;
        const data::MoveData* m = MoveOf(view, a);
        if (m && hp <= config_.heal_hp && m->IsHeal()) return a;
      }
    }
    return grunt_.choose_action(view, legal, rng);
  }

 private:
  GymLeaderConfig config_;
  Grunt grunt_;
};

class Gen1BossAI : public Agent {
 public:
  explicit Gen1BossAI(BossConfig c) : config_(c) {}
  std::string name() const override { return "Gen1BossAI"; }
  bool deterministic() const override { return false; }
  int choose_action(const PovView& view, const std::vector<int>& legal,
                    SeededRng& rng) const override {
    std::vector<int> moves, switches;
    Split(legal, &moves, &switches);
    if (moves.empty() || view.MustSwitch()) return Uniform(legal, rng);
    const data::GameData& data = view.tracker->Data();
    if (view.tracker->turn() == config_.boost_turn) {
      std::vector<int> boosts;
      for (int a : moves)
        if (const data::MoveData* m = MoveOf(view, a); m && m->IsBoost()) boosts.push_back(a);
      if (!boosts.empty()) return Uniform(boosts, rng);
    }
    const std::vector<std::string> opp = OppTypes(view);
    std::vector<double> weights;
    double total = 0.0;
    for (int a : moves) {
      const data::MoveData* m = MoveOf(view, a);
      bool super = m && m->IsDamaging() && !opp.empty() &&
                   data.Effectiveness(m->type, opp, view.tracker->gen()) > 1.0;
      weights.push_back(super ? config_.super_effective_weight : 1.0);
      total += weights.back();
    }
    double r = rng.Uniform() * total;
    for (size_t i = 0; i < moves.size(); ++i) {
      if (r < weights[i]) return moves[i];
      r -= weights[i];
    }
    return moves.back();
  }

 private:
  BossConfig config_;
};

// Facts about one candidate action, evaluated once and matched against rules.
struct ActionFacts {
  bool is_switch = false;
  std::string move_class;
  std::string move;
  std::string effectiveness = "neutral";
  double damage = 0.0;
  bool ko = false;
  bool condition_active = false;
  double matchup = 0.0;
};

ActionFacts Facts(const PovView& view, int a) {
  ActionFacts f;
  const data::GameData& data = view.tracker->Data();
  const int gen = view.tracker->gen();
  if (a >= engine::kFirstSwitch) {
    f.is_switch = true;
    f.matchup = SwitchMatchup(view, a);
    return f;
  }
  const data::MoveData* m = MoveOf(view, a);
  if (!m) return f;
  f.move = ToId(m->name);
  f.move_class = MoveClass(*m);
  const std::vector<std::string> opp = OppTypes(view);
  const engine::PublicPokemon* target = view.Foe().Active();
  if (m->IsDamaging()) {
    double eff = opp.empty() ? 1.0 : data.Effectiveness(m->type, opp, gen);
    f.effectiveness = eff == 0.0 ? "immune" : eff > 1.0 ? "super" : eff < 1.0 ? "resisted" : "neutral";
    f.damage = ExpectedDamage(view, m->name);
    f.ko = target && f.damage >= target->HpFraction();
  } else if (!m->status.empty()) {
    auto has = [&](const char* t) { return std::find(opp.begin(), opp.end(), t) != opp.end(); };
    bool immune = (m->type == "Electric" && !opp.empty() && data.Effectiveness(m->type, opp, gen) == 0.0) ||
                  ((m->status == "psn" || m->status == "tox") && (has("Poison") || has("Steel"))) ||
                  (m->status == "brn" && has("Fire")) || (m->status == "frz" && has("Ice"));
    if (immune) f.effectiveness = "immune";
  }
  if (!m->side_condition.empty()) {
    const engine::PublicSide& side = m->side_condition_on_self ? view.Me() : view.Foe();
    const std::string sc = ToId(m->side_condition);
    if (sc == "spikes") f.condition_active = side.spikes >= std::max(1, data.Gen(gen).spikes_max_layers);
    else if (sc == "reflect") f.condition_active = side.reflect;
    else if (sc == "lightscreen") f.condition_active = side.light_screen;
  } else if (!m->weather.empty()) {
    f.condition_active = ToId(view.tracker->weather()) == ToId(m->weather);
  }
  return f;
}

bool Matches(const RulePredicate& p, const ActionFacts& f, const PovView& view) {
  const engine::PublicPokemon* own = view.Me().Active();
  const engine::PublicPokemon* opp = view.Foe().Active();
  const double own_hp = own ? own->HpFraction() : 0.0;
  const double opp_hp = opp ? opp->HpFraction() : 0.0;
  if (p.action && *p.action != (f.is_switch ? "switch" : "move")) return false;
  if (p.move_class && (f.is_switch || *p.move_class != f.move_class)) return false;
  if (p.move && (f.is_switch || ToId(*p.move) != f.move)) return false;
  if (p.effectiveness && (f.is_switch || *p.effectiveness != f.effectiveness)) return false;
  if (p.own_hp_below && !(own_hp < *p.own_hp_below)) return false;
  if (p.own_hp_above && !(own_hp > *p.own_hp_above)) return false;
  if (p.opp_hp_below && !(opp_hp < *p.opp_hp_below)) return false;
  if (p.opp_hp_above && !(opp_hp > *p.opp_hp_above)) return false;
  if (p.own_statused && *p.own_statused != (own && !own->status.empty())) return false;
  if (p.target_statused && *p.target_statused != (opp && !opp->status.empty())) return false;
  if (p.target_confused && *p.target_confused != (opp && opp->confused)) return false;
  if (p.ko_possible && (f.is_switch || *p.ko_possible != f.ko)) return false;
  if (p.condition_active && (f.is_switch || *p.condition_active != f.condition_active)) return false;
  if (p.own_boost_at_least) {
    int top = own ? *std::max_element(own->boosts.begin(), own->boosts.end()) : 0;
    if (top < *p.own_boost_at_least) return false;
  }
  if (p.matchup_below && (!f.is_switch || !(f.matchup < *p.matchup_below))) return false;
  if (p.matchup_above && (!f.is_switch || !(f.matchup > *p.matchup_above))) return false;
  return true;
}

class EmeraldKaizo : public Agent {
 public:
  explicit EmeraldKaizo(RuleTable t) : table_(std::move(t)) {}
  std::string name() const override { return "EmeraldKaizo"; }
  bool deterministic() const override { return false; }
  int choose_action(const PovView& view, const std::vector<int>& legal,
                    SeededRng& rng) const override {
    std::vector<int> best;
    double best_score = 0.0;
    for (int a : legal) {
      ActionFacts f = Facts(view, a);
      double s = 0.0;
      for (const Rule& r : table_.rules)
        if (Matches(r.when, f, view)) s += r.score + r.score_per_damage * f.damage;
      if (best.empty() || s > best_score + kTieEpsilon) {
        best = {a};
        best_score = s;
      } else if (std::abs(s - best_score) <= kTieEpsilon) {
        best.push_back(a);
      }
    }
    return Uniform(best, rng);
  }

 private:
  RuleTable table_;
};

class SimpleHeuristics : public Agent {
 public:
  explicit SimpleHeuristics(SimpleHeuristicsConfig c) : config_(c) {}
  std::string name() const override { return "SimpleHeuristics"; }
  bool deterministic() const override { return true; }

  // Type matchup plus speed and hp terms, from the own active's side.
  double Matchup(const PovView& view, const std::string& species, double own_hp) const {
    const data::GameData& data = view.tracker->Data();
    const engine::PublicPokemon* opp = view.Foe().Active();
    if (!opp) return 0.0;
    const int gen = view.tracker->gen();
    double score = TypeMatchup(data, TypesOf(data, species), OppTypes(view), gen);
    const data::SpeciesData* mine = data.FindSpecies(species);
    const data::SpeciesData* theirs = data.FindSpecies(opp->species);
    if (mine && theirs) {
      if (mine->base[5] > theirs->base[5]) score += config_.speed_tier_coefficient;
      else if (mine->base[5] < theirs->base[5]) score -= config_.speed_tier_coefficient;
    }
    score += config_.hp_fraction_coefficient * (own_hp - opp->HpFraction());
    return score;
  }

  int choose_action(const PovView& view, const std::vector<int>& legal,
                    SeededRng&) const override {
    std::vector<int> moves, switches;
    Split(legal, &moves, &switches);
    auto best_switch = [&] {
      return ArgmaxFirst(switches, [&](int a) {
        std::optional<std::string> sp = view.SwitchForAction(a);
        const engine::PublicPokemon* p = sp ? view.OwnPublic(*sp) : nullptr;
        return sp ? Matchup(view, *sp, p ? p->HpFraction() : 1.0) : 0.0;
      });
    };
    if (moves.empty() || view.MustSwitch()) return switches.empty() ? legal.front() : best_switch();

    const engine::PublicPokemon* own = view.Me().Active();
    const double hp = OwnHp(view);
    const double matchup = Matchup(view, view.ActiveSpecies(), hp);
    if (!switches.empty() && own) {
      const auto& b = own->boosts;
      const int lo = config_.switch_out_boost_stage;
      bool drained = (b[0] <= lo && b[2] <= lo) || b[1] <= lo || b[3] <= lo;
      if (matchup < config_.switch_out_matchup || drained) return best_switch();
    }
    const engine::PublicSide& foe = view.Foe();
    int fainted = 0;
    for (const auto& p : foe.roster) fainted += p.fainted ? 1 : 0;
    const int remaining = foe.team_size - fainted;
    for (int a : moves) {
      const data::MoveData* m = MoveOf(view, a);
      if (!m) continue;
      if (ToId(m->side_condition) == "spikes" && remaining >= config_.hazard_min_opponents &&
          foe.spikes == 0)
        return a;
    }
    if (hp >= config_.setup_hp && matchup > 0) {
      for (int a : moves) {
        const data::MoveData* m = MoveOf(view, a);
        if (m && BoostUseful(view, *m)) return a;
      }
    }
    const int gen = view.tracker->gen();
    return ArgmaxFirst(moves, [&](int a) {
      const data::MoveData* m = MoveOf(view, a);
      if (!m || !m->IsDamaging()) return 0.0;
      const int acc = m->AccuracyIn(gen);
      return ExpectedDamage(view, m->name) * (acc == 0 ? 1.0 : acc / 100.0);
    });
  }

 private:
  SimpleHeuristicsConfig config_;
};

RulePredicate ParsePredicate(const json& j) {
  static const std::vector<std::string> kKnown = {
      "action", "move_class", "move", "effectiveness", "own_hp_below", "own_hp_above",
      "opp_hp_below", "opp_hp_above", "own_statused", "target_statused", "target_confused",
      "ko_possible", "condition_active", "own_boost_at_least", "matchup_below", "matchup_above"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(kKnown.begin(), kKnown.end(), it.key()) == kKnown.end())
      Fail(ErrorCode::kSchemaMismatch, "rule table: unknown predicate " + it.key());
  RulePredicate p;
  auto str = [&](const char* k, std::optional<std::string>& out) {
    if (j.contains(k)) out = j.at(k).get<std::string>();
  };
  auto num = [&](const char* k, std::optional<double>& out) {
    if (j.contains(k)) out = j.at(k).get<double>();
  };
  auto flag = [&](const char* k, std::optional<bool>& out) {
    if (j.contains(k)) out = j.at(k).get<bool>();
  };
  str("action", p.action);
  str("move_class", p.move_class);
  str("move", p.move);
  str("effectiveness", p.effectiveness);
  num("own_hp_below", p.own_hp_below);
  num("own_hp_above", p.own_hp_above);
  num("opp_hp_below", p.opp_hp_below);
  num("opp_hp_above", p.opp_hp_above);
  flag("own_statused", p.own_statused);
  flag("target_statused", p.target_statused);
  flag("target_confused", p.target_confused);
  flag("ko_possible", p.ko_possible);
  flag("condition_active", p.condition_active);
  if (j.contains("own_boost_at_least")) p.own_boost_at_least = j.at("own_boost_at_least").get<int>();
  num("matchup_below", p.matchup_below);
  num("matchup_above", p.matchup_above);
  return p;
}

}  // namespace

std::string MoveClass(const data::MoveData& m) {
  if (m.IsDamaging()) return "damaging";
  if (!m.status.empty()) return "status";
  if (m.IsHeal()) return "heal";
  if (m.IsBoost()) return "boost";
  const std::string sc = ToId(m.side_condition);
  if (sc == "spikes") return "hazard";
  if (sc == "reflect" || sc == "lightscreen") return "screen";
  if (!m.weather.empty()) return "weather";
  if (!m.volatile_status.empty()) return "volatile";
  return "other";
}

double TypeMatchup(const data::GameData& data, const std::vector<std::string>& mine,
                   const std::vector<std::string>& theirs, int gen) {
  if (mine.empty() || theirs.empty()) return 0.0;
  double offense = 0.0, defense = 0.0;
  for (const auto& t : mine) offense = std::max(offense, data.Effectiveness(t, theirs, gen));
  for (const auto& t : theirs) defense = std::max(defense, data.Effectiveness(t, mine, gen));
  return offense - defense;
}

double ExpectedDamage(const PovView& view, const std::string& move) {
  const engine::PublicPokemon* opp = view.Foe().Active();
  const engine::PublicPokemon* own = view.Me().Active();
  if (!opp || !own || opp->fainted || own->fainted) return 0.0;
  const data::GameData& data = view.tracker->Data();
  const data::MoveData& m = ToId(move) == "struggle" ? data.Struggle() : data.Move(move);
  if (!m.IsDamaging()) return 0.0;
  const int gen = view.tracker->gen();
  engine::DamageContext ctx;
  ctx.gen = gen;
  ctx.weather = view.tracker->weather();
  const bool physical = engine::IsPhysical(m, gen);
  ctx.screen = physical ? view.Foe().reflect : view.Foe().light_screen;
  return engine::damage_calc(data, view.ActiveState(view.pov), view.ActiveState(Other(view.pov)), m,
                             ctx, engine::RngMode::kExpected);
}

AgentConfig AgentConfig::FromJsonText(const std::string& text) {
  json j = ParseJson(text, "agent thresholds");
  AgentConfig c;
  try {
    if (j.contains("gen1bossai")) {
      const json& b = j.at("gen1bossai");
      c.boss.boost_turn = b.value("boost_turn", c.boss.boost_turn);
      c.boss.super_effective_weight = b.value("super_effective_weight", c.boss.super_effective_weight);
    }
    if (j.contains("gymleader")) {
      const json& g = j.at("gymleader");
      c.gym_leader.boost_hp = g.value("boost_hp", c.gym_leader.boost_hp);
      c.gym_leader.boost_stage_cap = g.value("boost_stage_cap", c.gym_leader.boost_stage_cap);
      c.gym_leader.heal_hp = g.value("heal_hp", c.gym_leader.heal_hp);
    }
    if (j.contains("simpleheuristics")) {
      const json& s = j.at("simpleheuristics");
      auto& o = c.simple;
      o.switch_out_matchup = s.value("switch_out_matchup", o.switch_out_matchup);
      o.speed_tier_coefficient = s.value("speed_tier_coefficient", o.speed_tier_coefficient);
      o.hp_fraction_coefficient = s.value("hp_fraction_coefficient", o.hp_fraction_coefficient);
      o.switch_out_boost_stage = s.value("switch_out_boost_stage", o.switch_out_boost_stage);
      o.setup_hp = s.value("setup_hp", o.setup_hp);
      o.hazard_min_opponents = s.value("hazard_min_opponents", o.hazard_min_opponents);
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string("agent thresholds: ") + e.what());
  }
  if (c.gym_leader.heal_hp > c.gym_leader.boost_hp)
    Fail(ErrorCode::kSchemaMismatch, "agent thresholds: heal_hp above boost_hp");
  return c;
}

AgentConfig AgentConfig::Load(const std::filesystem::path& path) {
  return FromJsonText(ReadFile(path));
}

AgentConfig AgentConfig::LoadDefault() {
  return Load(data::GameData::DefaultDir() / "agents" / "thresholds.json");
}

RuleTable RuleTable::FromJsonText(const std::string& text) {
  json j = ParseJson(text, "rule table");
  RuleTable t;
  try {
    for (const json& r : j.at("rules")) {
      Rule rule;
      rule.when = ParsePredicate(r.value("when", json::object()));
      rule.score = r.value("score", 0.0);
      rule.score_per_damage = r.value("score_per_damage", 0.0);
      t.rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string("rule table: ") + e.what());
  }
  return t;
}

RuleTable RuleTable::Load(const std::filesystem::path& path) { return FromJsonText(ReadFile(path)); }

RuleTable RuleTable::LoadDefault() {
  return Load(data::GameData::DefaultDir() / "agents" / "emerald_kaizo.json");
}

std::unique_ptr<Agent> MakeRandomBaseline() { return std::make_unique<RandomBaseline>(); }
std::unique_ptr<Agent> MakeGen1BossAI(const BossConfig& c) { return std::make_unique<Gen1BossAI>(c); }
std::unique_ptr<Agent> MakeGrunt() { return std::make_unique<Grunt>(); }
std::unique_ptr<Agent> MakeGymLeader(const GymLeaderConfig& c) { return std::make_unique<GymLeader>(c); }
std::unique_ptr<Agent> MakeEmeraldKaizo(RuleTable t) { return std::make_unique<EmeraldKaizo>(std::move(t)); }
std::unique_ptr<Agent> MakeSimpleHeuristics(const SimpleHeuristicsConfig& c) {
  return std::make_unique<SimpleHeuristics>(c);
}

std::vector<std::string> AgentNames() {
  return {"random", "gen1bossai", "grunt", "gymleader", "emeraldkaizo", "simpleheuristics"};
}

std::unique_ptr<Agent> MakeAgent(const std::string& name, const AgentConfig& config,
                                 const RuleTable& kaizo_table) {
  const std::string id = ToId(name);
  if (id == "random" || id == "randombaseline") return MakeRandomBaseline();
  if (id == "gen1bossai") return MakeGen1BossAI(config.boss);
  if (id == "grunt") return MakeGrunt();
  if (id == "gymleader") return MakeGymLeader(config.gym_leader);
  if (id == "emeraldkaizo") return MakeEmeraldKaizo(kaizo_table);
  if (id == "simpleheuristics") return MakeSimpleHeuristics(config.simple);
  Fail(ErrorCode::kInvalidArgument, "unknown agent " + name);
}

std::unique_ptr<Agent> MakeAgent(const std::string& name) {
  return MakeAgent(name, AgentConfig::LoadDefault(), RuleTable::LoadDefault());
}

}  // namespace battlelog::agents
