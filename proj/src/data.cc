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

#include "battlelog/data.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>

#include "json.hpp"

#include "battlelog/common.h"

#ifndef BATTLELOG_DATA_DIR
#define BATTLELOG_DATA_DIR "data"
#endif

namespace battlelog::data {
namespace {

using nlohmann::json;

json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open data file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, path.string() + ": " + e.what());
  }
}

Boosts ParseBoosts(const json& j) {
  Boosts b{};
  for (const auto& [k, v] : j.items()) {
    auto idx = BoostIndex(k);
    if (!idx) Fail(ErrorCode::kSchemaMismatch, "unknown boost stat " + k);
    b[*idx] = v.get<int>();
  }
  return b;
}

MoveData ParseMove(const std::string& name, const json& j) {
  MoveData m;
  m.name = name;
  m.type = j.at("type").get<std::string>();
  const std::string cat = j.at("category").get<std::string>();
  m.category = cat == "physical" ? Category::kPhysical
               : cat == "special" ? Category::kSpecial
                                  : Category::kStatus;
  m.power = j.value("power", 0);
  m.accuracy = j.value("accuracy", 0);
  m.pp = j.value("pp", 1);
  m.priority = j.value("priority", 0);
  m.gen = j.value("gen", 1);
  if (j.contains("secondary")) {
    const json& s = j["secondary"];
    Secondary sec;
    sec.chance = s.at("chance").get<int>();
    sec.status = s.value("status", "");
    if (s.contains("boosts")) sec.boosts = ParseBoosts(s["boosts"]);
    if (s.contains("self_boosts")) sec.self_boosts = ParseBoosts(s["self_boosts"]);
    m.secondary = sec;
  }
  m.status = j.value("status", "");
  m.volatile_status = j.value("volatile", "");
  if (j.contains("boosts")) m.boosts = ParseBoosts(j["boosts"]);
  if (j.contains("self_boosts")) m.self_boosts = ParseBoosts(j["self_boosts"]);
  m.heal = j.value("heal", 0.0);
  m.rest = j.value("rest", false);
  m.side_condition = j.value("side_condition", "");
  m.side_condition_on_self = j.value("side", "foe") == "self";
  m.weather = j.value("weather", "");
  m.recoil = j.value("recoil", 0.0);
  if (j.contains("overrides")) {
    for (const auto& [g, o] : j["overrides"].items()) {
      m.overrides[std::stoi(g)] = {o.value("power", m.power), o.value("accuracy", m.accuracy)};
    }
  }
  return m;
}

template <typename T>
bool Contains(const std::vector<T>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::optional<int> BoostIndex(std::string_view name) {
  for (size_t i = 0; i < kBoostNames.size(); ++i) {
    if (kBoostNames[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool MoveData::IsBoost() const {
  if (category != Category::kStatus) return false;
  return std::any_of(self_boosts.begin(), self_boosts.end(), [](int b) { return b > 0; });
}

int MoveData::PowerIn(int gen) const {
  auto it = overrides.find(gen);
  return it == overrides.end() ? power : it->second.first;
}

int MoveData::AccuracyIn(int gen) const {
  auto it = overrides.find(gen);
  return it == overrides.end() ? accuracy : it->second.second;
}

std::shared_ptr<const GameData> GameData::Load(const std::filesystem::path& dir) {
  auto gd = std::make_shared<GameData>();
  const json types = ReadJson(dir / "types.json");
  const json moves = ReadJson(dir / "moves.json");
  const json species = ReadJson(dir / "species.json");
  const json formats = ReadJson(dir / "formats.json");

  gd->types_ = types.at("types").get<std::vector<std::string>>();
  gd->chart_ = types.at("chart").get<std::map<std::string, std::map<std::string, double>>>();
  gd->gen1_chart_ =
      types.at("gen1_overrides").get<std::map<std::string, std::map<std::string, double>>>();
  gd->gen1_absent_types_ = types.at("gen1_absent").get<std::vector<std::string>>();

  for (const auto& [name, j] : moves.at("moves").items()) {
    gd->moves_.emplace(ToId(name), ParseMove(name, j));
  }
  gd->struggle_ = ParseMove("Struggle", moves.at("struggle"));

  for (const auto& [name, j] : species.at("species").items()) {
    SpeciesData s;
    s.name = name;
    s.gen = j.at("gen").get<int>();
    s.types = j.at("types").get<std::vector<std::string>>();
    auto stats = j.at("stats").get<std::vector<int>>();
    if (stats.size() != 6) Fail(ErrorCode::kSchemaMismatch, "species " + name + " needs 6 stats");
    std::copy(stats.begin(), stats.end(), s.base.begin());
    if (j.contains("gen1_special")) s.gen1_special = j["gen1_special"].get<int>();
    s.abilities = j.value("abilities", std::vector<std::string>{});
    s.movepool = j.at("movepool").get<std::vector<std::string>>();
    for (const auto& mv : s.movepool) {
      if (!gd->FindMove(mv)) Fail(ErrorCode::kSchemaMismatch, name + " movepool has unknown " + mv);
    }
    gd->species_.emplace(ToId(name), std::move(s));
  }

  for (const auto& [g, j] : formats.at("generations").items()) {
    GenConfig c;
    c.gen = std::stoi(g);
    c.items = j.at("items").get<bool>();
    c.abilities = j.at("abilities").get<bool>();
    c.merged_special = j.at("merged_special").get<bool>();
    c.physical_by_type = j.at("physical_by_type").get<bool>();
    c.weather = j.at("weather").get<bool>();
    c.crit_by_speed = j.at("crit").get<std::string>() == "speed";
    c.roll_min = j.at("roll_min").get<int>();
    c.roll_max = j.at("roll_max").get<int>();
    c.roll_den = j.at("roll_den").get<int>();
    c.sleep_min = j.at("sleep_min").get<int>();
    c.sleep_max = j.at("sleep_max").get<int>();
    c.residual_den = j.at("residual_den").get<int>();
    c.spikes_max_layers = j.at("spikes_max_layers").get<int>();
    c.thaw_chance = j.at("thaw_chance").get<int>();
    gd->gens_[c.gen] = c;
  }
  for (const auto& [id, j] : formats.at("formats").items()) {
    FormatData f;
    f.id = id;
    f.gen = j.at("gen").get<int>();
    f.name = j.at("name").get<std::string>();
    f.pool = j.at("pool").get<std::vector<std::string>>();
    for (const auto& sp : f.pool) {
      if (!gd->FindSpecies(sp)) Fail(ErrorCode::kSchemaMismatch, id + " pool has unknown " + sp);
    }
    gd->formats_[id] = std::move(f);
  }
  for (const auto& [item, j] : formats.at("items").items()) {
    gd->items_[item] = j.at("gens").get<std::vector<int>>();
  }
  gd->implemented_abilities_ = formats.at("implemented_abilities").get<std::vector<std::string>>();
  gd->unsupported_moves_ = formats.at("unsupported_moves").get<std::vector<std::string>>();
  gd->unsupported_messages_ = formats.at("unsupported_messages").get<std::vector<std::string>>();
  gd->unsupported_volatiles_ = formats.at("unsupported_volatiles").get<std::vector<std::string>>();
  gd->version_ = "types@" + types.value("version", "?") + ",moves@" + moves.value("version", "?") +
                 ",species@" + species.value("version", "?") + ",formats@" +
                 formats.value("version", "?");
  return gd;
}

std::filesystem::path GameData::DefaultDir() {
  if (const char* env = std::getenv("BATTLELOG_DATA_DIR"); env && *env) return env;
  return BATTLELOG_DATA_DIR;
}

std::shared_ptr<const GameData> GameData::Default() {
  static std::once_flag once;
  static std::shared_ptr<const GameData> cached;
  std::call_once(once, [] { cached = Load(DefaultDir()); });
  return cached;
}

const SpeciesData* GameData::FindSpecies(std::string_view name) const {
  auto it = species_.find(ToId(name));
  return it == species_.end() ? nullptr : &it->second;
}

const SpeciesData& GameData::Species(std::string_view name) const {
  const SpeciesData* s = FindSpecies(name);
  if (!s) Fail(ErrorCode::kUnknownName, "unknown species '" + std::string(name) + "'");
  return *s;
}

const MoveData* GameData::FindMove(std::string_view name) const {
  if (ToId(name) == "struggle") return &struggle_;
  auto it = moves_.find(ToId(name));
  return it == moves_.end() ? nullptr : &it->second;
}

const MoveData& GameData::Move(std::string_view name) const {
  const MoveData* m = FindMove(name);
  if (!m) Fail(ErrorCode::kUnknownName, "unknown move '" + std::string(name) + "'");
  return *m;
}

double GameData::Effectiveness(std::string_view attack_type, std::string_view defend_type,
                               int gen) const {
  if (gen == 1) {
    auto row = gen1_chart_.find(std::string(attack_type));
    if (row != gen1_chart_.end()) {
      auto cell = row->second.find(std::string(defend_type));
      if (cell != row->second.end()) return cell->second;
    }
  }
  auto row = chart_.find(std::string(attack_type));
  if (row == chart_.end()) return 1.0;  // typeless (Struggle)
  auto cell = row->second.find(std::string(defend_type));
  return cell == row->second.end() ? 1.0 : cell->second;
}

double GameData::Effectiveness(std::string_view attack_type,
                               std::span<const std::string> defend_types, int gen) const {
  double m = 1.0;
  for (const auto& t : defend_types) m *= Effectiveness(attack_type, t, gen);
  return m;
}

const GenConfig& GameData::Gen(int gen) const {
  auto it = gens_.find(gen);
  if (it == gens_.end()) Fail(ErrorCode::kUnknownName, "unsupported generation " + std::to_string(gen));
  return it->second;
}

const FormatData* GameData::FindFormat(std::string_view format_id) const {
  auto it = formats_.find(ToId(format_id));
  return it == formats_.end() ? nullptr : &it->second;
}

const FormatData& GameData::Format(std::string_view format_id) const {
  const FormatData* f = FindFormat(format_id);
  if (!f) Fail(ErrorCode::kUnknownName, "unknown format '" + std::string(format_id) + "'");
  return *f;
}

std::vector<std::string> GameData::FormatIds() const {
  std::vector<std::string> out;
  for (const auto& [id, f] : formats_) out.push_back(id);
  return out;
}

bool GameData::ItemExists(std::string_view item) const { return items_.count(std::string(item)) > 0; }

bool GameData::ItemAllowed(std::string_view item, int gen) const {
  auto it = items_.find(std::string(item));
  return it != items_.end() && std::find(it->second.begin(), it->second.end(), gen) != it->second.end();
}

std::vector<std::string> GameData::ItemsForGen(int gen) const {
  std::vector<std::string> out;
  for (const auto& [name, gens] : items_) {
    if (std::find(gens.begin(), gens.end(), gen) != gens.end()) out.push_back(name);
  }
  return out;
}

bool GameData::AbilityImplemented(std::string_view ability) const {
  return Contains(implemented_abilities_, ability);
}
bool GameData::MoveUnsupported(std::string_view move) const { return Contains(unsupported_moves_, move); }
bool GameData::MessageUnsupported(std::string_view kind) const {
  return Contains(unsupported_messages_, kind);
}
bool GameData::VolatileUnsupported(std::string_view name) const {
  return Contains(unsupported_volatiles_, name);
}

bool GameData::SpeciesInFormat(std::string_view species, const FormatData& format) const {
  const SpeciesData* s = FindSpecies(species);
  return s && Contains(format.pool, s->name);
}

bool GameData::MoveLegal(const SpeciesData& species, std::string_view move, int gen) const {
  const MoveData* m = FindMove(move);
  return m && m->name != "Struggle" && m->gen <= gen && Contains(species.movepool, m->name);
}

std::vector<std::string> GameData::AllSpeciesNames() const {
  std::vector<std::string> out;
  for (const auto& [id, s] : species_) out.push_back(s.name);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> GameData::AllMoveNames() const {
  std::vector<std::string> out;
  for (const auto& [id, m] : moves_) out.push_back(m.name);
  out.push_back(struggle_.name);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> GameData::AllItemNames() const {
  std::vector<std::string> out;
  for (const auto& [name, g] : items_) out.push_back(name);
  return out;
}

std::vector<std::string> GameData::AllAbilityNames() const {
  std::set<std::string> out;
  for (const auto& [id, s] : species_) out.insert(s.abilities.begin(), s.abilities.end());
  return {out.begin(), out.end()};
}

}  // namespace battlelog::data
