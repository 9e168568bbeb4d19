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

#include "battlelog/trajectory.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace battlelog::trajectory {
namespace {

using engine::PovView;
using engine::SideSnapshot;
using engine::Tracker;
using protocol::ProtocolEvent;

bool Selected(PovSelection sel, Side s) {
  return sel == PovSelection::kBoth || (sel == PovSelection::kP1) == (s == Side::kP1);
}

bool EndsTurnWindow(const ProtocolEvent& e) {
  return e.Is<protocol::Turn>() || e.IsTerminal() || e.AsRaw("upkeep") != nullptr;
}

// First thing `side` was seen choosing in events[from, ...) before the
// window closes. Moves with a [from] tag were not chosen (e.g. forced hits).
ObservedChoice ScanChoice(const std::vector<ProtocolEvent>& events, size_t from, Side side,
                          bool switch_only) {
  for (size_t i = from; i < events.size(); ++i) {
    const ProtocolEvent& e = events[i];
    if (i > from && (switch_only ? (e.Is<protocol::Turn>() || e.IsTerminal()) : EndsTurnWindow(e)))
      break;
    if (const auto* sw = e.As<protocol::Switch>()) {
      if (sw->pokemon.side == side) return ObservedChoice::Switch(sw->Species());
    } else if (const auto* mv = e.As<protocol::Move>()) {
      if (!switch_only && mv->user.side == side && !protocol::FindTag(mv->tags, "[from]"))
        return ObservedChoice::Move(mv->move);
    }
  }
  return {};
}

struct PendingStep {
  Side side;
  Step step;
  std::array<SideSnapshot, 2> snap;
};

std::array<SideSnapshot, 2> Snapshots(const Tracker& tr) {
  return {PublicSnapshot(tr.side(Side::kP1)), PublicSnapshot(tr.side(Side::kP2))};
}

void CheckFinite(double v, const char* what) {
  if (!std::isfinite(v)) Fail(ErrorCode::kSchemaMismatch, std::string("non-finite ") + what);
}

}  // namespace

double compute_reward(const RewardDeltas& d, int win) {
  const double hp = d.own_hp - d.opp_hp;
  const double status = kStatusWeight * (d.opp_status - d.own_status);
  const double faint = d.opp_faints - d.own_faints;
  return hp + status + faint + kWinBonus * win;
}

engine::SideSnapshot PublicSnapshot(const engine::PublicSide& side) {
  SideSnapshot s;
  for (const auto& p : side.roster) {
    s.hp += p.HpFraction();
    s.statused += p.status.empty() ? 0 : 1;
    s.fainted += p.fainted ? 1 : 0;
  }
  const int unseen = std::max(0, side.team_size - static_cast<int>(side.roster.size()));
  s.hp += unseen;
  return s;
}

RewardDeltas DeltasBetween(const std::array<SideSnapshot, 2>& before,
                           const std::array<SideSnapshot, 2>& after, Side pov) {
  const int me = Index(pov);
  const int foe = Index(Other(pov));
  RewardDeltas d;
  d.own_hp = after[me].hp - before[me].hp;
  d.opp_hp = after[foe].hp - before[foe].hp;
  d.own_status = after[me].statused - before[me].statused;
  d.opp_status = after[foe].statused - before[foe].statused;
  d.own_faints = after[me].fainted - before[me].fainted;
  d.opp_faints = after[foe].fainted - before[foe].fainted;
  return d;
}

int extract_action_label(const PovView& view, const ObservedChoice& choice) {
  if (choice.kind == ObservedChoice::Kind::kNone) return kMasked;
  const std::string want = ToId(choice.name);
  for (int a : view.LegalActions()) {
    std::optional<std::string> name = choice.kind == ObservedChoice::Kind::kMove
                                          ? view.MoveForAction(a)
                                          : view.SwitchForAction(a);
    if (name && ToId(*name) == want) return a;
  }
  Fail(ErrorCode::kUnmappableChoice,
       std::string(choice.kind == ObservedChoice::Kind::kMove ? "move " : "switch to ") +
           choice.name + " is not a legal action for " + std::string(SideId(view.pov)));
}

bool IsDiscardReason(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContradictoryReveal:
    case ErrorCode::kInconsistentEvent:
    case ErrorCode::kUnmappableChoice:
    case ErrorCode::kUnsupportedMechanic:
    case ErrorCode::kTruncatedLog:
      return true;
    default:
      return false;
  }
}

ReconstructResult reconstruct(const protocol::ReplayDocument& doc,
                              const inference::UsageStats& stats,
                              std::shared_ptr<const data::GameData> data,
                              const ReconstructOptions& options) {
  ReconstructResult result;
  try {
    if (!doc.HasTerminal()) Fail(ErrorCode::kTruncatedLog, "no win or tie event");
    const auto& events = doc.events;

    // Track publicly and collect what each side revealed.
    std::array<inference::PartialTeam, 2> partial;
    partial[0].side = Side::kP1;
    partial[1].side = Side::kP2;
    {
      Tracker tr(data);
      for (size_t i = 0; i < events.size(); ++i) {
        tr.apply_event(events[i]);
        for (auto& p : partial) inference::update_from_event(p, events[i], tr.turn(), i);
      }
      for (Side s : {Side::kP1, Side::kP2}) {
        partial[Index(s)].team_size = tr.side(s).team_size;
        if (options.known_teams[Index(s)]) {
          result.teams[Index(s)] = *options.known_teams[Index(s)];
        } else {
          result.teams[Index(s)] =
              inference::finalize(partial[Index(s)], stats, doc.format_id, *data, options.finalize);
        }
      }
    }

    // Replay again with each side's completed team sheet.
    Tracker tr(data);
    std::array<PovView, 2> views;
    for (Side s : {Side::kP1, Side::kP2})
      views[Index(s)] = PovView{s, &tr, &result.teams[Index(s)]};
    std::array<std::vector<PendingStep>, 2> pending;
    // Sides already asked to replace their current fainted active.
    std::array<bool, 2> replacing{false, false};

    auto take = [&](Side s, size_t index, bool switch_only) {
      const PovView& view = views[Index(s)];
      PendingStep p{s, {}, Snapshots(tr)};
      p.step.obs = build_observation(view);
      p.step.turn = tr.turn();
      p.step.event_index = index;
      const size_t scan_from = switch_only ? index : index + 1;
      p.step.action = extract_action_label(view, ScanChoice(events, scan_from, s, switch_only));
      if (p.step.action == kMasked && options.fill) {
        int a = options.fill->choose(view, p.step.obs);
        if (a < 0 || a >= engine::kNumActions || p.step.obs.illegal[a])
          Fail(ErrorCode::kInvalidArgument, "fill policy returned an illegal action");
        p.step.action = a;
        p.step.filled = true;
      }
      pending[Index(s)].push_back(std::move(p));
    };

    for (size_t i = 0; i < events.size(); ++i) {
      const ProtocolEvent& e = events[i];
      const auto* sw = e.As<protocol::Switch>();
      if (sw && !replacing[Index(sw->pokemon.side)]) {
        const auto* active = tr.side(sw->pokemon.side).Active();
        // A replacement round: every side with a fainted active decides at
        // once. A replacement that faints on entry opens a new round.
        if (active && active->fainted) {
          for (Side s : {Side::kP1, Side::kP2}) {
            const auto* a = tr.side(s).Active();
            if (a && a->fainted && !replacing[Index(s)]) {
              take(s, i, true);
              replacing[Index(s)] = true;
            }
          }
        }
      }
      tr.apply_event(e);
      if (sw) replacing[Index(sw->pokemon.side)] = false;
      if (e.Is<protocol::Turn>()) {
        for (Side s : {Side::kP1, Side::kP2}) take(s, i, false);
      }
    }

    const engine::Outcome& outcome = tr.outcome();
    const auto final_snap = Snapshots(tr);
    for (Side s : {Side::kP1, Side::kP2}) {
      if (!Selected(options.pov, s)) continue;
      auto& ps = pending[Index(s)];
      if (ps.empty()) Fail(ErrorCode::kTruncatedLog, "no decision points");
      Trajectory t;
      t.format_id = doc.format_id;
      t.pov = s;
      t.source = options.source;
      t.rating = doc.rating;
      if (options.fill) t.fill_policy = options.fill->name;
      int win = 0;
      if (outcome.kind == engine::Outcome::Kind::kWin) win = outcome.winner == s ? 1 : -1;
      for (size_t k = 0; k < ps.size(); ++k) {
        Step st = ps[k].step;
        const bool last = k + 1 == ps.size();
        const auto& next = last ? final_snap : ps[k + 1].snap;
        st.reward = compute_reward(DeltasBetween(ps[k].snap, next, s), last ? win : 0);
        st.done = last;
        if (k > 0) {
          st.prev_action = t.steps.back().action;
          st.prev_reward = t.steps.back().reward;
        }
        t.steps.push_back(std::move(st));
      }
      result.trajectories.push_back(std::move(t));
    }
  } catch (const Error& err) {
    if (!IsDiscardReason(err.code())) throw;
    result.trajectories.clear();
    result.discarded = Discarded{err.code(), err.what()};
  }
  return result;
}

std::string TrajectoryToJson(const Trajectory& t) {
  nlohmann::json j;
  j["schema_version"] = t.schema_version;
  j["format_id"] = t.format_id;
  j["pov"] = std::string(SideId(t.pov));
  j["source"] = t.source;
  j["rating"] = t.rating ? nlohmann::json(*t.rating) : nlohmann::json(nullptr);
  j["fill_policy"] = t.fill_policy;
  nlohmann::json steps = nlohmann::json::array();
  for (const Step& s : t.steps) {
    CheckFinite(s.reward, "reward");
    nlohmann::json js;
    js["words"] = s.obs.words;
    js["numeric"] = s.obs.numeric;
    js["illegal"] = s.obs.illegal;
    js["prev_action"] = s.prev_action;
    js["prev_reward"] = s.prev_reward;
    js["action"] = s.action;
    js["reward"] = s.reward;
    js["done"] = s.done;
    js["filled"] = s.filled;
    js["turn"] = s.turn;
    js["event_index"] = s.event_index;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j.dump();
}

Trajectory TrajectoryFromJson(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string("bad dataset record: ") + e.what());
  }
  try {
    Trajectory t;
    t.schema_version = j.at("schema_version").get<int>();
    if (t.schema_version != kDatasetSchemaVersion)
      Fail(ErrorCode::kSchemaMismatch,
           "dataset schema_version " + std::to_string(t.schema_version) + ", expected " +
               std::to_string(kDatasetSchemaVersion));
    t.format_id = j.at("format_id").get<std::string>();
    const std::string pov = j.at("pov").get<std::string>();
    if (pov != "p1" && pov != "p2") Fail(ErrorCode::kSchemaMismatch, "bad pov " + pov);
    t.pov = pov == "p1" ? Side::kP1 : Side::kP2;
    t.source = j.at("source").get<std::string>();
    if (!j.at("rating").is_null()) t.rating = j.at("rating").get<int>();
    t.fill_policy = j.at("fill_policy").get<std::string>();
    for (const auto& js : j.at("steps")) {
      Step s;
      auto words = js.at("words").get<std::vector<std::string>>();
      auto numeric = js.at("numeric").get<std::vector<double>>();
      auto illegal = js.at("illegal").get<std::vector<bool>>();
      if (words.size() != kNumTokens || numeric.size() != kNumNumeric ||
          illegal.size() != engine::kNumActions)
        Fail(ErrorCode::kSchemaMismatch, "observation has the wrong shape");
      std::copy(words.begin(), words.end(), s.obs.words.begin());
      std::copy(numeric.begin(), numeric.end(), s.obs.numeric.begin());
      std::copy(illegal.begin(), illegal.end(), s.obs.illegal.begin());
      s.prev_action = js.at("prev_action").get<int>();
      s.prev_reward = js.at("prev_reward").get<double>();
      s.action = js.at("action").get<int>();
      s.reward = js.at("reward").get<double>();
      s.done = js.at("done").get<bool>();
      s.filled = js.at("filled").get<bool>();
      s.turn = js.value("turn", 0);
      s.event_index = js.value("event_index", size_t{0});
      if (s.action < kMasked || s.action >= engine::kNumActions)
        Fail(ErrorCode::kSchemaMismatch, "action label out of range");
      t.steps.push_back(std::move(s));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, std::string("bad dataset record: ") + e.what());
  }
}

void write_dataset(const std::vector<Trajectory>& trajectories, const std::filesystem::path& path,
                   bool append) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  for (const auto& t : trajectories) out << TrajectoryToJson(t) << '\n';
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

std::vector<Trajectory> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Trajectory> out;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(TrajectoryFromJson(line));
    } catch (const Error& e) {
      Fail(e.code(), path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> CollectWords(const std::vector<Trajectory>& trajectories) {
  std::vector<std::string> words;
  for (const auto& t : trajectories)
    for (const auto& s : t.steps) words.insert(words.end(), s.obs.words.begin(), s.obs.words.end());
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace battlelog::trajectory
