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

#ifndef BATTLELOG_INFERENCE_H_
#define BATTLELOG_INFERENCE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/engine.h"
#include "battlelog/protocol.h"

namespace battlelog::inference {

inline constexpr int kUsageSchemaVersion = 1;
inline constexpr double kDefaultPriorWeight = 0.5;

// A hidden attribute plus the moment it became public.
template <typename T>
struct Revealed {
  std::optional<T> value;
  int turn = -1;
  size_t event = 0;  // index of the disclosing event in the replay
  bool Known() const { return value.has_value(); }
};

struct PartialPokemon {
  std::string nickname;
  Revealed<std::string> species;
  Revealed<int> level;
  std::vector<Revealed<std::string>> moves;
  Revealed<std::string> item;
  Revealed<std::string> ability;
  bool item_removed = false;  // the revealed item was used up or lost
};

struct PartialTeam {
  Side side = Side::kP1;
  int team_size = 6;
  std::vector<PartialPokemon> slots;

  PartialPokemon* Find(std::string_view nickname);
  const PartialPokemon* FindSpecies(std::string_view species) const;
};

// Records whatever `e` discloses about `partial.side`. Events about the other
// side are ignored. Throws ContradictoryReveal.
void update_from_event(PartialTeam& partial, const protocol::ProtocolEvent& e, int turn,
                       size_t event_index);

using Frequencies = std::map<std::string, double>;

struct SpeciesUsage {
  Frequencies moves;
  Frequencies items;  // "nothing" stands for no held item
  Frequencies abilities;
  Frequencies spreads;
  Frequencies teammates;
};

struct FormatUsage {
  Frequencies species;
  std::map<std::string, SpeciesUsage> pokemon;
};

struct UsageStats {
  std::map<std::string, FormatUsage> formats;

  const FormatUsage* Find(std::string_view format_id) const;
  // Validates the schema version and that every frequency lies in [0, 1].
  static UsageStats FromJsonText(const std::string& text);
  static UsageStats Load(const std::filesystem::path& path);
  // Every data/usage/*.json file merged into one table.
  static UsageStats LoadDirectory(const std::filesystem::path& dir);
  std::string ToJsonText() const;
};

// Usage tables derived from complete teams of one format.
UsageStats usage_from_teams(const std::vector<engine::Team>& teams, const std::string& format_id);

// (1 - weight) * base + weight * prior, entry by entry.
UsageStats MergeUsage(const UsageStats& base, const UsageStats& prior, double weight);

enum class FillMode { kArgmax, kSample };

struct FinalizeOptions {
  FillMode mode = FillMode::kArgmax;
  uint64_t seed = 0;
};

// Completes every unknown attribute. Revealed attributes are kept verbatim.
// Throws EmptyStats when the format has no usage table.
engine::Team finalize(const PartialTeam& partial, const UsageStats& stats,
                      const std::string& format_id, const data::GameData& data,
                      const FinalizeOptions& options = {});

// Move frequencies across the whole format, weighted by species usage.
Frequencies FormatMoveTable(const FormatUsage& usage);

}  // namespace battlelog::inference

#endif  // BATTLELOG_INFERENCE_H_
