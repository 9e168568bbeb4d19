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

#ifndef BATTLELOG_EVALHARNESS_H_
#define BATTLELOG_EVALHARNESS_H_

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "battlelog/agents.h"
#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/engine.h"
#include "battlelog/inference.h"
#include "battlelog/protocol.h"
#include "battlelog/trajectory.h"

namespace battlelog::eval {

// ---- Team sets ----

enum class TeamSetKind { kVariety, kCompetitive, kReplayDerived };
std::string_view TeamSetKindName(TeamSetKind kind);

struct TeamSet {
  TeamSetKind kind = TeamSetKind::kCompetitive;
  std::string format_id;
  std::optional<uint64_t> seed;  // variety sets only
  std::vector<engine::Team> teams;
  std::vector<std::string> names;  // parallel to teams; may be empty strings
};

struct VarietyOptions {
  double temperature = 2.0;
  // No species may appear in more than cap * (team size / pool size) of teams.
  double concentration_cap = 1.25;
  // Added to every legal move's usage frequency before tempering.
  double frequency_floor = 0.01;
};

// Spreads species evenly (without replacement through the shuffled pool,
// reshuffling when exhausted) and draws movesets, items and abilities from
// usage frequencies raised to 1/temperature. Throws InvalidArgument when the
// pool has fewer than six species.
TeamSet generate_variety_teams(const data::GameData& data, const inference::UsageStats& stats,
                               const std::string& format_id, int n, uint64_t seed,
                               const VarietyOptions& options = {});

// Team text: the familiar export format, one block per Pokemon, teams
// introduced by "=== [format_id] name ===" lines.
std::string ExportTeams(const TeamSet& set);
// Parses and validates. IllegalTeam messages name the team and slot.
TeamSet ImportTeams(const data::GameData& data, const std::string& text);
TeamSet load_competitive_teams(const data::GameData& data, const std::filesystem::path& path);

// Finalized teams from replays rated at or above `rating_floor`. Replays that
// are discarded or unrated are skipped.
TeamSet replay_team_set(const std::vector<protocol::ReplayDocument>& docs,
                        const inference::UsageStats& stats,
                        std::shared_ptr<const data::GameData> data, int rating_floor);

// ---- Matches ----

struct MatchOptions {
  int max_turns = engine::kDefaultMaxTurns;
  bool record = false;  // keep the log and both self-play trajectories
};

struct MatchResult {
  std::array<std::string, 2> agents;
  std::array<int, 2> team_ids{0, 0};
  uint64_t seed = 0;
  int winner = -1;  // 0 or 1 (side index), -1 tie
  int turns = 0;
  std::array<int, 2> replaced{0, 0};  // illegal choices replaced by the simulator
  std::vector<protocol::ProtocolEvent> events;           // when recorded
  std::vector<trajectory::Trajectory> trajectories;      // when recorded
  std::optional<trajectory::Discarded> discarded;        // recording failure
  bool operator==(const MatchResult& o) const {
    return agents == o.agents && team_ids == o.team_ids && seed == o.seed &&
           winner == o.winner && turns == o.turns && replaced == o.replaced &&
           trajectories == o.trajectories;
  }
};

// Plays one battle. Team ids index `teams.teams`; when not given they are
// drawn from the seed.
MatchResult run_match(const agents::Agent& a, const agents::Agent& b, const TeamSet& teams,
                      std::shared_ptr<const data::GameData> data, uint64_t seed,
                      const MatchOptions& options = {},
                      std::optional<std::array<int, 2>> team_ids = std::nullopt);

std::string MatchResultToJson(const MatchResult& r);

struct ArenaOptions {
  int workers = 1;
  MatchOptions match;
};

// Score of a over b per game: 1 win, 0.5 tie, 0 loss.
struct PairScore {
  double score = 0.0;
  int games = 0;
  int errors = 0;  // matches aborted by an engine error
  double Rate() const { return games ? score / games : 0.5; }
};

// Games are played in mirrored pairs: the same seed and teams with the
// agents' sides swapped, so a deterministic agent against itself scores
// exactly 0.5.
PairScore play_pair(const agents::Agent& a, const agents::Agent& b, const TeamSet& teams,
                    std::shared_ptr<const data::GameData> data, int n, uint64_t seed,
                    const ArenaOptions& options = {});

struct RoundRobin {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rate;  // rate[i][j]: row agent's score vs column agent
  std::vector<std::vector<int>> games;
  int errors = 0;
};

RoundRobin round_robin(const std::vector<const agents::Agent*>& agents, const TeamSet& teams,
                       std::shared_ptr<const data::GameData> data, int n_per_pair, uint64_t seed,
                       const ArenaOptions& options = {});

struct Composite {
  std::vector<std::string> opponents;
  std::vector<double> rates;
  std::vector<int> games;
  double score = 0.0;  // unweighted mean of rates
};

// The six composite opponents in registry order.
std::vector<std::string> CompositeOpponents();
Composite heuristic_composite(const agents::Agent& agent, const TeamSet& teams,
                              std::shared_ptr<const data::GameData> data, int n, uint64_t seed,
                              const ArenaOptions& options = {});

// One-sided tests at the given confidence.
double WilsonLowerBound(double successes, int n, double z = 1.6448536269514722);
// z statistic for p1 > p2 with pooled variance.
double TwoProportionZ(double p1, int n1, double p2, int n2);
inline constexpr double kZ95 = 1.6448536269514722;

// ---- Ratings ----

struct RatingState {
  double rating = 1500.0;
  double rd = 350.0;
  int last_period = 0;
};

struct GlickoConfig {
  double initial_rd = 350.0;
  double min_rd = 25.0;
  double c = 34.6;  // RD inflation per elapsed period
};

struct GameOutcome {
  double rating = 1500.0;
  double rd = 350.0;
  double score = 0.0;  // 0, 0.5 or 1
};

// One rating period. RD is first inflated for `elapsed_periods` idle periods
// (capped at the initial RD), then updated from the games; with no games only
// the inflation happens. Throws InvalidArgument for scores outside {0, .5, 1}.
RatingState glicko1_update(const RatingState& state, const std::vector<GameOutcome>& games,
                           const GlickoConfig& config = {}, int elapsed_periods = 1);

inline constexpr double kGxeRdCutoff = 100.0;
// Percent chance to beat a random ladder player, rounded to two decimals;
// nullopt when RD is above the reliability cutoff.
std::optional<double> gxe(const RatingState& state);

}  // namespace battlelog::eval

#endif  // BATTLELOG_EVALHARNESS_H_
