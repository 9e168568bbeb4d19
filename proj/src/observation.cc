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

#include "battlelog/observation.h"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace battlelog::trajectory {
namespace {

using engine::PublicPokemon;

std::vector<std::string> MakeTokenNames() {
  std::vector<std::string> n = {"format", "phase", "own_active_species", "own_active_status",
                                "own_active_type1", "own_active_type2", "own_active_last_move"};
  for (int i = 0; i < 4; ++i) n.push_back("own_move_" + std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    n.push_back("own_bench_" + std::to_string(i) + "_species");
    n.push_back("own_bench_" + std::to_string(i) + "_status");
  }
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      n.push_back("own_bench_" + std::to_string(i) + "_move_" + std::to_string(j));
  n.push_back("own_active_item");
  n.push_back("own_active_ability");
  for (int i = 0; i < 5; ++i) {
    n.push_back("own_bench_" + std::to_string(i) + "_item");
    n.push_back("own_bench_" + std::to_string(i) + "_ability");
  }
  for (const char* s : {"opp_active_species", "opp_active_status", "opp_active_type1",
                        "opp_active_type2", "opp_active_last_move", "opp_active_item",
                        "opp_active_ability", "weather"})
    n.push_back(s);
  for (const char* side : {"own", "opp"})
    for (const char* c : {"spikes", "reflect", "light_screen"})
      n.push_back(std::string(side) + "_side_" + c);
  for (const char* side : {"own", "opp"})
    for (const char* v : {"confusion", "substitute", "trapped"})
      n.push_back(std::string(side) + "_volatile_" + v);
  for (const char* side : {"own", "opp"})
    for (const char* f : {"action", "result", "effectiveness", "crit", "status_change", "fainted"})
      n.push_back(std::string("last_turn_") + side + "_" + f);
  n.push_back("reserved_0");
  n.push_back("reserved_1");
  return n;
}

std::vector<std::string> MakeNumericNames() {
  std::vector<std::string> n = {"own_active_hp", "own_active_level"};
  for (auto b : data::kBoostNames) n.push_back("own_boost_" + std::string(b));
  n.push_back("opp_active_hp");
  n.push_back("opp_active_level");
  for (auto b : data::kBoostNames) n.push_back("opp_boost_" + std::string(b));
  for (int i = 0; i < 4; ++i) n.push_back("own_move_" + std::to_string(i) + "_power");
  for (int i = 0; i < 4; ++i) n.push_back("own_move_" + std::to_string(i) + "_accuracy");
  for (int i = 0; i < 5; ++i) n.push_back("own_bench_" + std::to_string(i) + "_hp");
  for (const char* s : {"atk", "def", "spa", "spd", "spe"}) n.push_back(std::string("own_stat_") + s);
  for (const char* s : {"own_remaining", "opp_revealed", "opp_remaining", "turn"}) n.push_back(s);
  for (const char* f : {"sleep_turns", "toxic_counter", "confusion", "trapped"}) {
    n.push_back(std::string("own_") + f);
    n.push_back(std::string("opp_") + f);
  }
  return n;
}

template <size_t N>
std::array<std::string_view, N> Freeze(const std::vector<std::string>& names) {
  std::array<std::string_view, N> out{};
  if (names.size() != N) Fail(ErrorCode::kInvalidArgument, "observation layout size mismatch");
  for (size_t i = 0; i < N; ++i) out[i] = names[i];
  return out;
}

std::string Word(std::string_view s) {
  std::string id = ToId(s);
  return id.empty() ? std::string(kPad) : id;
}

std::string StatusWord(const PublicPokemon* p) {
  if (!p) return "nostatus";
  if (p->fainted) return "fainted";
  static const std::map<std::string, std::string, std::less<>> kWords = {
      {"slp", "sleep"}, {"par", "paralysis"}, {"brn", "burn"},
      {"frz", "freeze"}, {"psn", "poison"},  {"tox", "toxic"}};
  if (p->status.empty()) return "nostatus";
  auto it = kWords.find(p->status);
  return it == kWords.end() ? ToId(p->status) : it->second;
}

class Writer {
 public:
  void Token(std::string w) { obs.words.at(t_++) = std::move(w); }
  void Pad(int n = 1) {
    for (int i = 0; i < n; ++i) Token(std::string(kPad));
  }
  void Num(double v) { obs.numeric.at(n_++) = v; }
  void Zero(int n = 1) {
    for (int i = 0; i < n; ++i) Num(0.0);
  }
  void Done() const {
    if (t_ != kNumTokens || n_ != kNumNumeric)
      Fail(ErrorCode::kInvalidArgument, "observation writer filled the wrong number of slots");
  }
  Observation obs;

 private:
  int t_ = 0;
  int n_ = 0;
};

}  // namespace

const std::array<std::string_view, kNumTokens>& TokenSlotNames() {
  static const std::vector<std::string> names = MakeTokenNames();
  static const auto frozen = Freeze<kNumTokens>(names);
  return frozen;
}

const std::array<std::string_view, kNumNumeric>& NumericSlotNames() {
  static const std::vector<std::string> names = MakeNumericNames();
  static const auto frozen = Freeze<kNumNumeric>(names);
  return frozen;
}

Observation build_observation(const engine::PovView& view) {
  const engine::Tracker& tr = *view.tracker;
  const data::GameData& data = tr.Data();
  const int gen = tr.gen();
  const engine::PublicSide& me = view.Me();
  const engine::PublicSide& foe = view.Foe();
  const PublicPokemon* own = me.Active();
  const PublicPokemon* opp = foe.Active();
  const std::string own_species = view.ActiveSpecies();
  const engine::PokemonSpec* own_spec = view.OwnSpec(own_species);
  const std::vector<std::string> bench = view.Bench();
  auto types_of = [&](const std::string& species) {
    std::vector<std::string> t;
    if (const data::SpeciesData* sd = data.FindSpecies(species)) t = sd->types;
    return t;
  };
  auto item_word = [&](const engine::PokemonSpec* spec, const PublicPokemon* pub) {
    if (gen < 2) return std::string(kPad);
    if (pub && pub->item_consumed) return std::string("consumed");
    if (!spec || spec->item.empty()) return std::string("noitem");
    return Word(spec->item);
  };
  auto ability_word = [&](const engine::PokemonSpec* spec) {
    if (gen < 3 || !spec || spec->ability.empty()) return std::string(kPad);
    return Word(spec->ability);
  };

  Writer w;
  w.Token(Word(tr.format_id()));
  w.Token(view.MustSwitch() ? "switch" : "move");
  // Own active.
  if (own) {
    w.Token(Word(own->species));
    w.Token(StatusWord(own));
    auto types = types_of(own->species);
    w.Token(types.size() > 0 ? Word(types[0]) : std::string(kPad));
    w.Token(types.size() > 1 ? Word(types[1]) : std::string(kPad));
    w.Token(own->last_move.empty() ? std::string(kPad) : Word(own->last_move));
  } else {
    w.Pad(5);
  }
  std::vector<std::string> moves = view.ActiveMoves();
  for (int i = 0; i < 4; ++i) w.Token(i < static_cast<int>(moves.size()) ? Word(moves[i]) : std::string(kPad));
  // Own bench in action order.
  for (int i = 0; i < 5; ++i) {
    if (i < static_cast<int>(bench.size())) {
      w.Token(Word(bench[i]));
      w.Token(StatusWord(view.OwnPublic(bench[i])));
    } else {
      w.Pad(2);
    }
  }
  for (int i = 0; i < 5; ++i) {
    std::vector<std::string> bm;
    if (i < static_cast<int>(bench.size())) {
      if (const engine::PokemonSpec* s = view.OwnSpec(bench[i])) bm = s->moves;
      std::sort(bm.begin(), bm.end());
    }
    for (int j = 0; j < 4; ++j) w.Token(j < static_cast<int>(bm.size()) ? Word(bm[j]) : std::string(kPad));
  }
  w.Token(item_word(own_spec, own));
  w.Token(ability_word(own_spec));
  for (int i = 0; i < 5; ++i) {
    if (i < static_cast<int>(bench.size())) {
      const engine::PokemonSpec* s = view.OwnSpec(bench[i]);
      w.Token(item_word(s, view.OwnPublic(bench[i])));
      w.Token(ability_word(s));
    } else {
      w.Pad(2);
    }
  }
  // Opponent active: public information only.
  if (opp) {
    w.Token(Word(opp->species));
    w.Token(StatusWord(opp));
    auto types = types_of(opp->species);
    w.Token(types.size() > 0 ? Word(types[0]) : std::string(kPad));
    w.Token(types.size() > 1 ? Word(types[1]) : std::string(kPad));
    w.Token(opp->last_move.empty() ? std::string(kPad) : Word(opp->last_move));
    if (gen < 2) w.Pad();
    else if (opp->item_consumed) w.Token("consumed");
    else w.Token(opp->item.empty() ? "unrevealed" : Word(opp->item));
    if (gen < 3) w.Pad();
    else w.Token(opp->ability.empty() ? "unrevealed" : Word(opp->ability));
  } else {
    w.Pad(7);
  }
  w.Token(tr.weather().empty() ? std::string(kPad) : Word(tr.weather()));
  for (const engine::PublicSide* s : {&me, &foe}) {
    w.Token(s->spikes > 0 ? "spikes" + std::to_string(s->spikes) : std::string(kPad));
    w.Token(s->reflect ? "reflect" : std::string(kPad));
    w.Token(s->light_screen ? "lightscreen" : std::string(kPad));
  }
  for (const PublicPokemon* p : {own, opp}) {
    w.Token(p && p->confused ? "confusion" : std::string(kPad));
    w.Pad(2);  // substitute and trapping are outside the modelled mechanics
  }
  for (Side side : {view.pov, Other(view.pov)}) {
    const engine::TurnSummary& s = tr.last_turn(side);
    w.Token(s.action);
    w.Token(s.result);
    w.Token(s.effectiveness);
    w.Token(s.crit ? "crit" : "nocrit");
    w.Token(s.status_change);
    w.Token(s.fainted ? "fainted" : "alive");
  }
  w.Pad(2);

  // Numeric features.
  const int own_level = own_spec ? own_spec->level : (own ? own->level : 100);
  w.Num(own ? own->HpFraction() : 0.0);
  w.Num(own_level / 100.0);
  for (int i = 0; i < 7; ++i) w.Num(own ? own->boosts[i] / 6.0 : 0.0);
  w.Num(opp ? opp->HpFraction() : 0.0);
  w.Num(opp ? opp->level / 100.0 : 0.0);
  for (int i = 0; i < 7; ++i) w.Num(opp ? opp->boosts[i] / 6.0 : 0.0);
  for (int i = 0; i < 4; ++i)
    w.Num(i < static_cast<int>(moves.size()) ? data.Move(moves[i]).PowerIn(gen) / 100.0 : 0.0);
  for (int i = 0; i < 4; ++i) {
    if (i < static_cast<int>(moves.size())) {
      int acc = data.Move(moves[i]).AccuracyIn(gen);
      w.Num(acc == 0 ? 1.0 : acc / 100.0);
    } else {
      w.Num(0.0);
    }
  }
  for (int i = 0; i < 5; ++i) {
    if (i < static_cast<int>(bench.size())) {
      const PublicPokemon* p = view.OwnPublic(bench[i]);
      w.Num(p ? p->HpFraction() : 1.0);
    } else {
      w.Num(0.0);
    }
  }
  if (own_spec) {
    auto stats = engine::ComputeStats(data.Species(own_spec->species), own_spec->level, gen);
    for (int i = 1; i < 6; ++i)
      w.Num(stats[i] * engine::StageMultiplier(own ? own->boosts[i - 1] : 0) / 500.0);
  } else {
    w.Zero(5);
  }
  auto fainted = [](const engine::PublicSide& s) {
    return static_cast<int>(std::count_if(s.roster.begin(), s.roster.end(),
                                          [](const PublicPokemon& p) { return p.fainted; }));
  };
  const int own_size = view.own_team ? static_cast<int>(view.own_team->size()) : me.team_size;
  w.Num((own_size - fainted(me)) / 6.0);
  w.Num(static_cast<double>(foe.roster.size()) / 6.0);
  w.Num((foe.team_size - fainted(foe)) / 6.0);
  w.Num(tr.turn() / 100.0);
  w.Num(own ? own->sleep_turns / 7.0 : 0.0);
  w.Num(opp ? opp->sleep_turns / 7.0 : 0.0);
  w.Num(own ? own->toxic_turns / 15.0 : 0.0);
  w.Num(opp ? opp->toxic_turns / 15.0 : 0.0);
  w.Num(own && own->confused ? 1.0 : 0.0);
  w.Num(opp && opp->confused ? 1.0 : 0.0);
  w.Zero(2);
  w.Done();

  w.obs.illegal.fill(true);
  for (int a : view.LegalActions()) w.obs.illegal[a] = false;
  return w.obs;
}

Vocabulary::Vocabulary() {
  Add(std::string(kPad));
  Add(std::string(kUnknown));
}

void Vocabulary::Add(const std::string& w) {
  if (ids_.count(w)) return;
  ids_[w] = static_cast<int>(words_.size());
  words_.push_back(w);
}

Vocabulary Vocabulary::Build(const std::vector<std::string>& words) {
  Vocabulary v;
  std::vector<std::string> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& w : sorted) v.Add(w);
  return v;
}

int Vocabulary::Id(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? 1 : it->second;
}

std::array<int, kNumTokens> Vocabulary::Encode(const std::array<std::string, kNumTokens>& words) const {
  std::array<int, kNumTokens> out{};
  for (int i = 0; i < kNumTokens; ++i) out[i] = Id(words[i]);
  return out;
}

std::string Vocabulary::ToJsonText() const {
  nlohmann::json j;
  j["schema_version"] = kObservationVersion;
  j["words"] = words_;
  return j.dump();
}

Vocabulary Vocabulary::FromJsonText(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("schema_version", 0) != kObservationVersion)
    Fail(ErrorCode::kSchemaMismatch, "vocabulary schema_version mismatch");
  auto words = j.at("words").get<std::vector<std::string>>();
  if (words.size() < 2 || words[0] != kPad || words[1] != kUnknown)
    Fail(ErrorCode::kSchemaMismatch, "vocabulary must start with the reserved tokens");
  Vocabulary v;
  for (const auto& w : words) v.Add(w);
  if (v.size() != static_cast<int>(words.size()))
    Fail(ErrorCode::kSchemaMismatch, "vocabulary contains duplicate words");
  return v;
}

}  // namespace battlelog::trajectory
