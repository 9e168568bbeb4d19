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

#include "battlelog/evalharness.h"

#include <cmath>

#include "battlelog/tracker.h"
#include "json.hpp"

namespace battlelog::eval {

MatchResult run_match(const agents::Agent& a, const agents::Agent& b, const TeamSet& teams,
                      std::shared_ptr<const data::GameData> data, uint64_t seed,
                      const MatchOptions& options, std::optional<std::array<int, 2>> team_ids) {
  if (teams.teams.empty()) Fail(ErrorCode::kInvalidArgument, "empty team set");
  MatchResult result;
  result.agents = {a.name(), b.name()};
  result.seed = seed;
  if (team_ids) {
    result.team_ids = *team_ids;
  } else {
    SeededRng pick(HashCombine(seed, 0x7ea5));
    const int n = static_cast<int>(teams.teams.size());
    result.team_ids = {pick.Below(n), pick.Below(n)};
  }
  for (int id : result.team_ids)
    if (id < 0 || id >= static_cast<int>(teams.teams.size()))
      Fail(ErrorCode::kInvalidArgument, "team id out of range");

  engine::BattleConfig cfg;
  cfg.format_id = teams.format_id;
  cfg.names = {a.name() + "-1", b.name() + "-2"};
  cfg.teams = {teams.teams[result.team_ids[0]], teams.teams[result.team_ids[1]]};
  cfg.seed = seed;
  cfg.max_turns = options.max_turns;
  std::vector<protocol::ProtocolEvent> log;
  engine::BattleState st = engine::NewBattle(data, cfg, &log);
  engine::Tracker tr(data);
  for (const auto& e : log) tr.apply_event(e);
  if (!options.record) log.clear();

  const std::array<const agents::Agent*, 2> players{&a, &b};
  std::array<SeededRng, 2> rngs{SeededRng(HashCombine(seed, 1)), SeededRng(HashCombine(seed, 2))};
  while (!st.outcome.Over()) {
    std::array<int, 2> choice{0, 0};
    for (Side s : {Side::kP1, Side::kP2}) {
      if (!engine::NeedsChoice(st, s)) continue;
      engine::PovView view{s, &tr, &cfg.teams[Index(s)]};
      choice[Index(s)] =
          players[Index(s)]->choose_action(view, engine::legal_actions(st, s), rngs[Index(s)]);
    }
    engine::StepResult r = engine::step(st, choice[0], choice[1]);
    for (int s = 0; s < 2; ++s) result.replaced[s] += r.replaced[s];
    for (const auto& e : r.events) tr.apply_event(e);
    if (options.record) log.insert(log.end(), r.events.begin(), r.events.end());
  }
  result.winner = st.outcome.kind == engine::Outcome::Kind::kWin ? Index(st.outcome.winner) : -1;
  result.turns = st.turn;

  if (options.record) {
    protocol::ReplayDocument doc;
    doc.format_id = teams.format_id;
    doc.format_name = data->Format(teams.format_id).name;
    doc.players = cfg.names;
    doc.events = log;
    trajectory::ReconstructOptions ro;
    ro.source = "selfplay";
    ro.known_teams = {cfg.teams[0], cfg.teams[1]};
    trajectory::ReconstructResult rr = trajectory::reconstruct(doc, {}, data, ro);
    result.trajectories = std::move(rr.trajectories);
    result.discarded = rr.discarded;
    result.events = std::move(log);
  }
  return result;
}

std::string MatchResultToJson(const MatchResult& r) {
  nlohmann::json j;
  j["agents"] = r.agents;
  j["team_ids"] = r.team_ids;
  j["seed"] = r.seed;
  j["winner"] = r.winner < 0 ? nlohmann::json("tie") : nlohmann::json(r.agents[r.winner]);
  j["winner_side"] = r.winner;
  j["turns"] = r.turns;
  j["replaced"] = r.replaced;
  if (r.discarded) j["discarded"] = std::string(ErrorCodeName(r.discarded->reason));
  return j.dump();
}

PairScore play_pair(const agents::Agent& a, const agents::Agent& b, const TeamSet& teams,
                    std::shared_ptr<const data::GameData> data, int n, uint64_t seed,
                    const ArenaOptions& options) {
  std::vector<double> score(n, 0.0);
  std::vector<char> failed(n, 0);
  ParallelFor(n, options.workers, [&](int k) {
    const uint64_t game_seed = HashCombine(seed, static_cast<uint64_t>(k / 2));
    SeededRng pick(HashCombine(game_seed, 0x7ea5));
    const int count = static_cast<int>(teams.teams.size());
    std::array<int, 2> ids{pick.Below(count), pick.Below(count)};
    const bool a_first = k % 2 == 0;
    try {
      MatchResult r = a_first ? run_match(a, b, teams, data, game_seed, options.match, ids)
                              : run_match(b, a, teams, data, game_seed, options.match, ids);
      const int a_side = a_first ? 0 : 1;
      score[k] = r.winner < 0 ? 0.5 : (r.winner == a_side ? 1.0 : 0.0);
    } catch (const Error&) {
      failed[k] = 1;
    }
  });
  PairScore out;
  for (int k = 0; k < n; ++k) {
    if (failed[k]) {
      ++out.errors;
      continue;
    }
    out.score += score[k];
    ++out.games;
  }
  return out;
}

RoundRobin round_robin(const std::vector<const agents::Agent*>& agents, const TeamSet& teams,
                       std::shared_ptr<const data::GameData> data, int n_per_pair, uint64_t seed,
                       const ArenaOptions& options) {
  if (agents.size() < 2) Fail(ErrorCode::kInvalidArgument, "round robin needs at least two agents");
  const size_t m = agents.size();
  RoundRobin rr;
  for (const auto* a : agents) rr.names.push_back(a->name());
  rr.rate.assign(m, std::vector<double>(m, 0.5));
  rr.games.assign(m, std::vector<int>(m, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      PairScore s = play_pair(*agents[i], *agents[j], teams, data, n_per_pair,
                              HashCombine(seed, i * 1000003 + j), options);
      rr.rate[i][j] = s.Rate();
      rr.rate[j][i] = s.games ? (s.games - s.score) / s.games : 0.5;
      rr.games[i][j] = rr.games[j][i] = s.games;
      rr.errors += s.errors;
    }
  }
  return rr;
}

std::vector<std::string> CompositeOpponents() {
  return {"random", "gen1bossai", "grunt", "gymleader", "simpleheuristics", "emeraldkaizo"};
}

Composite heuristic_composite(const agents::Agent& agent, const TeamSet& teams,
                              std::shared_ptr<const data::GameData> data, int n, uint64_t seed,
                              const ArenaOptions& options) {
  const agents::AgentConfig config = agents::AgentConfig::LoadDefault();
  const agents::RuleTable table = agents::RuleTable::LoadDefault();
  Composite c;
  double sum = 0.0;
  uint64_t k = 0;
  for (const auto& name : CompositeOpponents()) {
    auto opp = agents::MakeAgent(name, config, table);
    PairScore s = play_pair(agent, *opp, teams, data, n, HashCombine(seed, ++k), options);
    c.opponents.push_back(opp->name());
    c.rates.push_back(s.Rate());
    c.games.push_back(s.games);
    sum += s.Rate();
  }
  c.score = sum / c.rates.size();
  return c;
}

double WilsonLowerBound(double successes, int n, double z) {
  if (n <= 0) return 0.0;
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = p + z2 / (2.0 * n);
  const double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return (centre - margin) / (1.0 + z2 / n);
}

double TwoProportionZ(double p1, int n1, double p2, int n2) {
  const double pooled = (p1 * n1 + p2 * n2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  if (se == 0.0) return p1 > p2 ? INFINITY : (p1 < p2 ? -INFINITY : 0.0);
  return (p1 - p2) / se;
}

}  // namespace battlelog::eval
