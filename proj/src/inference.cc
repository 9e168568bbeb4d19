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

#include "battlelog/inference.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace battlelog::inference {

using nlohmann::json;
using protocol::PokemonRef;
using protocol::ProtocolEvent;
using protocol::Tags;

PartialPokemon* PartialTeam::Find(std::string_view nickname) {
  for (auto& s : slots)
    if (s.nickname == nickname) return &s;
  return nullptr;
}

const PartialPokemon* PartialTeam::FindSpecies(std::string_view species) const {
  for (const auto& s : slots)
    if (s.species.value == std::string(species)) return &s;
  return nullptr;
}

namespace {

[[noreturn]] void Contradiction(const std::string& why) {
  Fail(ErrorCode::kContradictoryReveal, why);
}

template <typename T>
void Reveal(Revealed<T>& slot, const T& value, int turn, size_t event, const char* what) {
  if (slot.Known()) {
    if (*slot.value != value) Contradiction(std::string("two different ") + what + " revealed");
    return;
  }
  slot.value = value;
  slot.turn = turn;
  slot.event = event;
}

std::string FromValue(const Tags& tags, std::string_view kind) {
  for (const auto& t : tags) {
    if (t.rfind("[from] ", 0) != 0) continue;
    std::string_view v = std::string_view(t).substr(7);
    if (v.rfind(kind, 0) == 0) return std::string(v.substr(kind.size()));
  }
  return "";
}

// The Pokemon an effect tag belongs to: the "[of]" Pokemon when present.
PokemonRef TagOwner(const PokemonRef& target, const Tags& tags) {
  for (const auto& t : tags) {
    if (t.rfind("[of] ", 0) != 0) continue;
    if (auto ref = protocol::ParseRef(std::string_view(t).substr(5))) return *ref;
  }
  return target;
}

class Updater {
 public:
  Updater(PartialTeam& team, int turn, size_t event) : team_(team), turn_(turn), event_(event) {}

  PartialPokemon* Slot(const PokemonRef& ref) {
    if (ref.side != team_.side) return nullptr;
    return team_.Find(ref.name);
  }

  void Item(PartialPokemon& p, const std::string& item, bool ended) {
    if (p.item.Known() && *p.item.value != item) {
      // A different item after the first one was used up is a new item, not a contradiction.
      if (!p.item_removed) Contradiction(p.nickname + " revealed two different items");
      return;
    }
    Reveal(p.item, item, turn_, event_, "items");
    if (ended) p.item_removed = true;
  }

  void Ability(PartialPokemon& p, const std::string& ability) {
    Reveal(p.ability, ability, turn_, event_, "abilities");
  }

  void Tagged(const PokemonRef& target, const Tags& tags) {
    PartialPokemon* owner = Slot(TagOwner(target, tags));
    if (!owner) return;
    if (auto item = FromValue(tags, "item: "); !item.empty()) Item(*owner, item, false);
    if (auto ability = FromValue(tags, "ability: "); !ability.empty()) Ability(*owner, ability);
  }

  void Switch(const protocol::SwitchIn& sw) {
    if (sw.pokemon.side != team_.side) return;
    PartialPokemon* p = team_.Find(sw.pokemon.name);
    if (!p) {
      team_.slots.push_back({});
      p = &team_.slots.back();
      p->nickname = sw.pokemon.name;
    }
    Reveal(p->species, sw.Species(), turn_, event_, "species");
    Reveal(p->level, sw.Level(), turn_, event_, "levels");
  }

  void Move(const protocol::Move& m) {
    PartialPokemon* p = Slot(m.user);
    if (!p || protocol::FindTag(m.tags, "[from]") || m.move == "Struggle") return;
    for (const auto& known : p->moves)
      if (*known.value == m.move) return;
    if (p->moves.size() >= 4) Contradiction(p->nickname + " revealed a fifth move");
    Revealed<std::string> r;
    r.value = m.move;
    r.turn = turn_;
    r.event = event_;
    p->moves.push_back(r);
  }

 private:
  PartialTeam& team_;
  int turn_;
  size_t event_;
};

}  // namespace

void update_from_event(PartialTeam& partial, const ProtocolEvent& e, int turn, size_t event_index) {
  Updater u(partial, turn, event_index);
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, protocol::TeamSize>) {
          if (ev.side == partial.side) partial.team_size = ev.size;
        } else if constexpr (std::is_same_v<T, protocol::Switch> ||
                             std::is_same_v<T, protocol::Drag>) {
          u.Switch(ev);
        } else if constexpr (std::is_same_v<T, protocol::Move>) {
          u.Move(ev);
        } else if constexpr (std::is_same_v<T, protocol::Item>) {
          if (PartialPokemon* p = u.Slot(ev.target)) u.Item(*p, ev.item, ev.ended);
        } else if constexpr (std::is_same_v<T, protocol::Ability>) {
          if (PartialPokemon* p = u.Slot(ev.target)) u.Ability(*p, ev.ability);
          u.Tagged(ev.target, ev.tags);
        } else if constexpr (std::is_same_v<T, protocol::Damage> ||
                             std::is_same_v<T, protocol::Heal> ||
                             std::is_same_v<T, protocol::SetStatus> ||
                             std::is_same_v<T, protocol::CureStatus> ||
                             std::is_same_v<T, protocol::Boost> ||
                             std::is_same_v<T, protocol::Unboost>) {
          u.Tagged(ev.target, ev.tags);
        } else if constexpr (std::is_same_v<T, protocol::Weather>) {
          for (const auto& t : ev.tags) {
            if (t.rfind("[of] ", 0) != 0) continue;
            if (auto ref = protocol::ParseRef(std::string_view(t).substr(5))) u.Tagged(*ref, ev.tags);
          }
        } else if constexpr (std::is_same_v<T, protocol::Raw>) {
          if (ev.kind == "-immune" && !ev.args.empty()) {
            if (auto ref = protocol::ParseRef(ev.args[0]))
              u.Tagged(*ref, Tags(ev.args.begin() + 1, ev.args.end()));
          }
        }
      },
      e.kind);
}

// ---------------------------------------------------------------------------
// Usage statistics

const FormatUsage* UsageStats::Find(std::string_view format_id) const {
  auto it = formats.find(std::string(format_id));
  return it == formats.end() ? nullptr : &it->second;
}

namespace {

Frequencies ReadTable(const json& j, const std::string& where) {
  Frequencies out;
  if (j.is_null()) return out;
  if (!j.is_object()) Fail(ErrorCode::kSchemaMismatch, where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) Fail(ErrorCode::kSchemaMismatch, where + "." + k + " must be a number");
    double f = v.get<double>();
    if (!(f >= 0.0 && f <= 1.0))
      Fail(ErrorCode::kSchemaMismatch, where + "." + k + " is outside [0, 1]");
    out[k] = f;
  }
  return out;
}

json WriteTable(const Frequencies& f) {
  json j = json::object();
  for (const auto& [k, v] : f) j[k] = v;
  return j;
}

}  // namespace

UsageStats UsageStats::FromJsonText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string("usage stats: ") + e.what());
  }
  if (!j.is_object() || j.value("schema_version", 0) != kUsageSchemaVersion)
    Fail(ErrorCode::kSchemaMismatch, "usage stats: unsupported schema_version");
  UsageStats out;
  for (const auto& [fid, fj] : j.at("formats").items()) {
    FormatUsage fu;
    fu.species = ReadTable(fj.value("species", json()), fid + ".species");
    if (fj.contains("pokemon")) {
      for (const auto& [sp, sj] : fj["pokemon"].items()) {
        std::string w = fid + "." + sp;
        SpeciesUsage su;
        su.moves = ReadTable(sj.value("moves", json()), w + ".moves");
        su.items = ReadTable(sj.value("items", json()), w + ".items");
        su.abilities = ReadTable(sj.value("abilities", json()), w + ".abilities");
        su.spreads = ReadTable(sj.value("spreads", json()), w + ".spreads");
        su.teammates = ReadTable(sj.value("teammates", json()), w + ".teammates");
        fu.pokemon[sp] = std::move(su);
      }
    }
    out.formats[fid] = std::move(fu);
  }
  return out;
}

UsageStats UsageStats::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open usage stats " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJsonText(ss.str());
}

UsageStats UsageStats::LoadDirectory(const std::filesystem::path& dir) {
  UsageStats out;
  if (!std::filesystem::is_directory(dir)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    UsageStats one = Load(f);
    for (auto& [k, v] : one.formats) out.formats[k] = std::move(v);
  }
  return out;
}

std::string UsageStats::ToJsonText() const {
  json j;
  j["schema_version"] = kUsageSchemaVersion;
  j["formats"] = json::object();
  for (const auto& [fid, fu] : formats) {
    json fj;
    fj["species"] = WriteTable(fu.species);
    fj["pokemon"] = json::object();
    for (const auto& [sp, su] : fu.pokemon) {
      fj["pokemon"][sp] = {{"moves", WriteTable(su.moves)},
                           {"items", WriteTable(su.items)},
                           {"abilities", WriteTable(su.abilities)},
                           {"spreads", WriteTable(su.spreads)},
                           {"teammates", WriteTable(su.teammates)}};
    }
    j["formats"][fid] = fj;
  }
  return j.dump(1);
}

UsageStats usage_from_teams(const std::vector<engine::Team>& teams, const std::string& format_id) {
  UsageStats out;
  FormatUsage& fu = out.formats[format_id];
  if (teams.empty()) return out;
  std::map<std::string, int> appearances;
  std::map<std::string, std::map<std::string, int>> moves, items, abilities, mates;
  for (const auto& team : teams) {
    for (const auto& p : team) {
      ++appearances[p.species];
      for (const auto& m : p.moves) ++moves[p.species][m];
      ++items[p.species][p.item.empty() ? "nothing" : p.item];
      if (!p.ability.empty()) ++abilities[p.species][p.ability];
      for (const auto& q : team)
        if (q.species != p.species) ++mates[p.species][q.species];
    }
  }
  auto scale = [](const std::map<std::string, int>& counts, int n) {
    Frequencies f;
    for (const auto& [k, c] : counts) f[k] = std::min(1.0, static_cast<double>(c) / n);
    return f;
  };
  for (const auto& [sp, n] : appearances) {
    fu.species[sp] = std::min(1.0, static_cast<double>(n) / teams.size());
    SpeciesUsage& su = fu.pokemon[sp];
    su.moves = scale(moves[sp], n);
    su.items = scale(items[sp], n);
    su.abilities = scale(abilities[sp], n);
    su.spreads = {{"fixed", 1.0}};
    su.teammates = scale(mates[sp], n);
  }
  return out;
}

UsageStats MergeUsage(const UsageStats& base, const UsageStats& prior, double weight) {
  auto mix = [&](const Frequencies& a, const Frequencies& b) {
    Frequencies out;
    for (const auto& [k, v] : a) out[k] += (1 - weight) * v;
    for (const auto& [k, v] : b) out[k] += weight * v;
    return out;
  };
  UsageStats out = base;
  for (const auto& [fid, pf] : prior.formats) {
    const FormatUsage* bf = base.Find(fid);
    FormatUsage empty;
    const FormatUsage& b = bf ? *bf : empty;
    FormatUsage& o = out.formats[fid];
    o.species = mix(b.species, pf.species);
    std::set<std::string> names;
    for (const auto& [k, v] : b.pokemon) names.insert(k);
    for (const auto& [k, v] : pf.pokemon) names.insert(k);
    for (const auto& n : names) {
      SpeciesUsage none;
      auto bi = b.pokemon.find(n);
      auto pi = pf.pokemon.find(n);
      const SpeciesUsage& x = bi == b.pokemon.end() ? none : bi->second;
      const SpeciesUsage& y = pi == pf.pokemon.end() ? none : pi->second;
      SpeciesUsage& z = o.pokemon[n];
      z.moves = mix(x.moves, y.moves);
      z.items = mix(x.items, y.items);
      z.abilities = mix(x.abilities, y.abilities);
      z.spreads = mix(x.spreads, y.spreads);
      z.teammates = mix(x.teammates, y.teammates);
    }
  }
  return out;
}

Frequencies FormatMoveTable(const FormatUsage& usage) {
  Frequencies out;
  double total = 0;
  for (const auto& [sp, u] : usage.species) total += u;
  if (total <= 0) return out;
  for (const auto& [sp, u] : usage.species) {
    auto it = usage.pokemon.find(sp);
    if (it == usage.pokemon.end()) continue;
    for (const auto& [m, f] : it->second.moves) out[m] += u * f / total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Completion

namespace {

struct Candidate {
  std::string name;
  double score = 0;
  double secondary = 0;
};

// Argmax with deterministic tie-breaks, or a draw proportional to the score.
int Pick(const std::vector<Candidate>& c, FillMode mode, SeededRng& rng) {
  if (c.empty()) return -1;
  if (mode == FillMode::kSample) {
    double total = 0;
    for (const auto& x : c) total += x.score + x.secondary * 1e-3;
    if (total > 0) {
      double r = rng.Uniform() * total;
      for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        r -= c[i].score + c[i].secondary * 1e-3;
        if (r < 0) return i;
      }
      return static_cast<int>(c.size()) - 1;
    }
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(c.size()); ++i) {
    const Candidate& a = c[i];
    const Candidate& b = c[best];
    if (a.score != b.score ? a.score > b.score
                           : a.secondary != b.secondary ? a.secondary > b.secondary
                                                        : a.name < b.name)
      best = i;
  }
  return best;
}

double Lookup(const Frequencies& f, const std::string& key) {
  auto it = f.find(key);
  return it == f.end() ? 0.0 : it->second;
}

}  // namespace

engine::Team finalize(const PartialTeam& partial, const UsageStats& stats,
                      const std::string& format_id, const data::GameData& data,
                      const FinalizeOptions& options) {
  const FormatUsage* usage = stats.Find(format_id);
  if (!usage || usage->species.empty())
    Fail(ErrorCode::kEmptyStats, "no usage statistics for " + format_id);
  const data::FormatData& format = data.Format(format_id);
  const int gen = format.gen;
  SeededRng rng(options.seed);

  engine::Team team;
  std::vector<const PartialPokemon*> source;
  for (const auto& slot : partial.slots) {
    if (!slot.species.Known()) continue;
    engine::PokemonSpec spec;
    spec.species = data.Species(*slot.species.value).name;
    spec.level = slot.level.value.value_or(100);
    for (const auto& m : slot.moves) spec.moves.push_back(*m.value);
    if (slot.item.Known()) spec.item = *slot.item.value;
    if (slot.ability.Known()) spec.ability = *slot.ability.value;
    team.push_back(spec);
    source.push_back(&slot);
  }

  const int target_size = std::min(partial.team_size, 6);
  while (static_cast<int>(team.size()) < target_size) {
    std::vector<Candidate> cands;
    for (const auto& [sp, u] : usage->species) {
      const data::SpeciesData* sd = data.FindSpecies(sp);
      if (!sd || !data.SpeciesInFormat(sd->name, format)) continue;
      bool used = std::any_of(team.begin(), team.end(),
                              [&](const engine::PokemonSpec& p) { return p.species == sd->name; });
      if (used) continue;
      double co = 0;
      for (const auto& p : team) {
        auto it = usage->pokemon.find(p.species);
        if (it != usage->pokemon.end()) co += Lookup(it->second.teammates, sd->name);
      }
      cands.push_back({sd->name, co, u});
    }
    int i = Pick(cands, options.mode, rng);
    if (i < 0) break;
    engine::PokemonSpec spec;
    spec.species = cands[i].name;
    team.push_back(spec);
    source.push_back(nullptr);
  }

  const Frequencies format_moves = FormatMoveTable(*usage);
  for (auto& spec : team) {
    const data::SpeciesData& sd = data.Species(spec.species);
    auto it = usage->pokemon.find(sd.name);
    const SpeciesUsage* su = it == usage->pokemon.end() ? nullptr : &it->second;
    // Species without their own table borrow the format-wide move distribution.
    const Frequencies& move_table = su ? su->moves : format_moves;
    while (spec.moves.size() < 4) {
      std::vector<Candidate> cands;
      for (const auto& m : sd.movepool) {
        if (!data.MoveLegal(sd, m, gen)) continue;
        if (std::find(spec.moves.begin(), spec.moves.end(), m) != spec.moves.end()) continue;
        double f = Lookup(move_table, m);
        if (f > 0) cands.push_back({m, f, 0});
      }
      int i = Pick(cands, options.mode, rng);
      if (i < 0) break;
      spec.moves.push_back(cands[i].name);
    }
    if (spec.moves.empty()) {
      std::vector<std::string> legal;
      for (const auto& m : sd.movepool)
        if (data.MoveLegal(sd, m, gen)) legal.push_back(m);
      std::sort(legal.begin(), legal.end());
      if (!legal.empty()) spec.moves.push_back(legal.front());
    }
    const PartialPokemon* src = source[&spec - team.data()];
    if (gen >= 2 && !(src && src->item.Known()) && su) {
      std::vector<Candidate> cands;
      for (const auto& [item, f] : su->items)
        if (f > 0 && (item == "nothing" || data.ItemAllowed(item, gen))) cands.push_back({item, f, 0});
      int i = Pick(cands, options.mode, rng);
      if (i >= 0 && cands[i].name != "nothing") spec.item = cands[i].name;
    }
    if (gen >= 3 && spec.ability.empty()) {
      std::vector<Candidate> cands;
      for (const auto& a : sd.abilities)
        cands.push_back({a, su ? Lookup(su->abilities, a) : 0.0, 0});
      int i = Pick(cands, options.mode, rng);
      spec.ability = i >= 0 ? cands[i].name : std::string();
    }
  }
  return team;
}

}  // namespace battlelog::inference
