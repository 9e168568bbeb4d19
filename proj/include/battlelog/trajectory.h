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

#ifndef BATTLELOG_TRAJECTORY_H_
#define BATTLELOG_TRAJECTORY_H_

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/engine.h"
#include "battlelog/inference.h"
#include "battlelog/observation.h"
#include "battlelog/protocol.h"
#include "battlelog/tracker.h"

namespace battlelog::trajectory {

inline constexpr int kMasked = -1;
inline constexpr int kNullAction = -1;
inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr double kWinBonus = 100.0;
inline constexpr double kStatusWeight = 0.5;

struct Step {
  Observation obs;
  int prev_action = kNullAction;
  double prev_reward = 0.0;
  int action = kMasked;
  double reward = 0.0;
  bool done = false;
  bool filled = false;  // label came from the fill policy
  int turn = 0;
  size_t event_index = 0;  // replay event the observation was taken before

  bool operator==(const Step&) const = default;
};

struct Trajectory {
  int schema_version = kDatasetSchemaVersion;
  std::string format_id;
  Side pov = Side::kP1;
  std::string source = "replay";  // "replay" or "selfplay"
  std::optional<int> rating;
  std::string fill_policy;  // empty when unfilled labels stay masked
  std::vector<Step> steps;

  bool operator==(const Trajectory&) const = default;
};

// Per-turn changes seen from one side. Hp terms are net (gained - lost) sums
// of hp fractions; status terms are changes in the number of statused members.
struct RewardDeltas {
  double own_hp = 0.0;
  double opp_hp = 0.0;
  int own_status = 0;
  int opp_status = 0;
  int own_faints = 0;
  int opp_faints = 0;
};

// win: +1 won, -1 lost, 0 ongoing or tie.
double compute_reward(const RewardDeltas& deltas, int win);

// Side totals used by the reward. Unrevealed members count as healthy.
engine::SideSnapshot PublicSnapshot(const engine::PublicSide& side);
RewardDeltas DeltasBetween(const std::array<engine::SideSnapshot, 2>& before,
                           const std::array<engine::SideSnapshot, 2>& after, Side pov);

// What a player was seen doing at one decision point.
struct ObservedChoice {
  enum class Kind { kNone, kMove, kSwitch };
  Kind kind = Kind::kNone;
  std::string name;  // move name or species

  static ObservedChoice Move(std::string move) { return {Kind::kMove, std::move(move)}; }
  static ObservedChoice Switch(std::string species) { return {Kind::kSwitch, std::move(species)}; }
};

// Maps an observed choice onto the action order the observation shows.
// Returns kMasked for kNone; throws UnmappableChoice otherwise when no legal
// action matches.
int extract_action_label(const engine::PovView& view, const ObservedChoice& choice);

// Chooses a label for a masked step. Must return a legal action.
struct FillPolicy {
  std::string name;
  std::function<int(const engine::PovView&, const Observation&)> choose;
};

enum class PovSelection { kP1, kP2, kBoth };

struct ReconstructOptions {
  PovSelection pov = PovSelection::kBoth;
  std::string source = "replay";
  // Ground-truth teams (self-play); skips inference for that side.
  std::array<std::optional<engine::Team>, 2> known_teams;
  std::optional<FillPolicy> fill;
  inference::FinalizeOptions finalize;
};

struct Discarded {
  ErrorCode reason = ErrorCode::kTruncatedLog;
  std::string detail;
};

struct ReconstructResult {
  std::vector<Trajectory> trajectories;
  std::array<engine::Team, 2> teams;  // finalized teams, indexed by side
  std::optional<Discarded> discarded;

  bool ok() const { return !discarded.has_value(); }
};

bool IsDiscardReason(ErrorCode code);

// Track, infer, finalize, backfill, then emit one trajectory per requested
// side. Errors in the discard family come back as `discarded`; anything else
// (missing usage table, bad options) is thrown.
ReconstructResult reconstruct(const protocol::ReplayDocument& doc,
                              const inference::UsageStats& stats,
                              std::shared_ptr<const data::GameData> data,
                              const ReconstructOptions& options = {});

// One JSON object per line.
std::string TrajectoryToJson(const Trajectory& t);
Trajectory TrajectoryFromJson(const std::string& line);
void write_dataset(const std::vector<Trajectory>& trajectories, const std::filesystem::path& path,
                   bool append = false);
std::vector<Trajectory> read_dataset(const std::filesystem::path& path);

// Every token word in a dataset, for vocabulary building.
std::vector<std::string> CollectWords(const std::vector<Trajectory>& trajectories);

}  // namespace battlelog::trajectory

#endif  // BATTLELOG_TRAJECTORY_H_
