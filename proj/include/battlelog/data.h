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

#ifndef BATTLELOG_DATA_H_
#define BATTLELOG_DATA_H_

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace battlelog::data {

// Boost stages in protocol order: atk, def, spa, spd, spe, accuracy, evasion.
inline constexpr std::array<std::string_view, 7> kBoostNames = {
    "atk", "def", "spa", "spd", "spe", "accuracy", "evasion"};
using Boosts = std::array<int, 7>;
std::optional<int> BoostIndex(std::string_view name);

enum class Category { kPhysical, kSpecial, kStatus };

struct Secondary {
  int chance = 0;
  std::string status;  // "par", "brn", ...; empty when none
  Boosts boosts{};     // applied to the target
  Boosts self_boosts{};
};

struct MoveData {
  std::string name;
  std::string type;
  Category category = Category::kStatus;
  int power = 0;
  int accuracy = 0;  // 0: never misses
  int pp = 0;
  int priority = 0;
  int gen = 1;
  std::optional<Secondary> secondary;
  std::string status;       // primary status inflicted by a status move
  std::string volatile_status;
  Boosts boosts{};          // primary target boosts (status moves)
  Boosts self_boosts{};
  double heal = 0.0;
  bool rest = false;
  std::string side_condition;
  bool side_condition_on_self = false;
  std::string weather;
  double recoil = 0.0;
  std::map<int, std::pair<int, int>> overrides;  // gen -> (power, accuracy)

  bool IsDamaging() const { return category != Category::kStatus; }
  bool IsBoost() const;
  bool IsHeal() const { return heal > 0.0 || rest; }
  int PowerIn(int gen) const;
  int AccuracyIn(int gen) const;
  int MaxPp() const { return pp * 8 / 5; }
};

struct SpeciesData {
  std::string name;
  int gen = 1;
  std::vector<std::string> types;
  std::array<int, 6> base{};  // hp atk def spa spd spe
  std::optional<int> gen1_special;
  std::vector<std::string> abilities;
  std::vector<std::string> movepool;
};

struct GenConfig {
  int gen = 1;
  bool items = false;
  bool abilities = false;
  bool merged_special = false;
  bool physical_by_type = true;
  bool weather = false;
  bool crit_by_speed = false;
  int roll_min = 217;
  int roll_max = 255;
  int roll_den = 255;
  int sleep_min = 1;
  int sleep_max = 7;
  int residual_den = 16;
  int spikes_max_layers = 0;
  int thaw_chance = 20;
};

struct FormatData {
  std::string id;
  int gen = 1;
  std::string name;  // "[Gen 1] OU"
  std::vector<std::string> pool;
};

// Immutable, shareable game tables loaded from the data directory.
class GameData {
 public:
  static std::shared_ptr<const GameData> Load(const std::filesystem::path& dir);
  // Loads from $BATTLELOG_DATA_DIR when set, else the directory compiled in.
  static std::shared_ptr<const GameData> Default();
  static std::filesystem::path DefaultDir();

  const SpeciesData& Species(std::string_view name) const;
  const SpeciesData* FindSpecies(std::string_view name) const;
  const MoveData& Move(std::string_view name) const;
  const MoveData* FindMove(std::string_view name) const;
  const MoveData& Struggle() const { return struggle_; }

  double Effectiveness(std::string_view attack_type, std::string_view defend_type, int gen) const;
  double Effectiveness(std::string_view attack_type, std::span<const std::string> defend_types,
                       int gen) const;

  const GenConfig& Gen(int gen) const;
  const FormatData& Format(std::string_view format_id) const;
  const FormatData* FindFormat(std::string_view format_id) const;
  std::vector<std::string> FormatIds() const;

  bool ItemExists(std::string_view item) const;
  bool ItemAllowed(std::string_view item, int gen) const;
  std::vector<std::string> ItemsForGen(int gen) const;
  bool AbilityImplemented(std::string_view ability) const;
  bool MoveUnsupported(std::string_view move) const;
  bool MessageUnsupported(std::string_view kind) const;
  bool VolatileUnsupported(std::string_view name) const;
  bool SpeciesInFormat(std::string_view species, const FormatData& format) const;
  bool MoveLegal(const SpeciesData& species, std::string_view move, int gen) const;

  const std::vector<std::string>& Types() const { return types_; }
  std::vector<std::string> AllSpeciesNames() const;
  std::vector<std::string> AllMoveNames() const;
  std::vector<std::string> AllItemNames() const;
  std::vector<std::string> AllAbilityNames() const;
  // Combined version string of every table, recorded in run manifests.
  std::string Version() const { return version_; }

 private:
  std::unordered_map<std::string, SpeciesData> species_;  // keyed by ToId
  std::unordered_map<std::string, MoveData> moves_;
  MoveData struggle_;
  std::vector<std::string> types_;
  std::map<std::string, std::map<std::string, double>> chart_;
  std::map<std::string, std::map<std::string, double>> gen1_chart_;
  std::vector<std::string> gen1_absent_types_;
  std::map<int, GenConfig> gens_;
  std::map<std::string, FormatData> formats_;
  std::map<std::string, std::vector<int>> items_;
  std::vector<std::string> implemented_abilities_;
  std::vector<std::string> unsupported_moves_;
  std::vector<std::string> unsupported_messages_;
  std::vector<std::string> unsupported_volatiles_;
  std::string version_;
};

}  // namespace battlelog::data

#endif  // BATTLELOG_DATA_H_
