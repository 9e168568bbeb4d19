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


#include "cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "battlelog/agents.h"
#include "battlelog/common.h"
#include "battlelog/data.h"
#include "battlelog/evalharness.h"
#include "battlelog/inference.h"
#include "battlelog/protocol.h"
#include "battlelog/trajectory.h"
#include "json.hpp"

namespace battlelog::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kManifestVersion = 1;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) Fail(ErrorCode::kIo, "cannot create directory " + dir.string());
}

// Files named directly plus the regular files inside named directories, each
// directory's entries sorted so runs are reproducible.
std::vector<fs::path> CollectInputs(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& extensions) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (extensions.empty() || std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
          found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      Fail(ErrorCode::kIo, "no such file or directory: " + in);
    }
  }
  return files;
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Options shared by every subcommand.
struct Globals {
  std::string data_dir;
  int workers = 1;

  std::shared_ptr<const data::GameData> Data() const {
    return data_dir.empty() ? data::GameData::Default() : data::GameData::Load(data_dir);
  }
};

void WriteManifest(const fs::path& path, const std::string& subcommand, const json& config,
                   const data::GameData& data, const json& outputs) {
  json m;
  m["manifest_version"] = kManifestVersion;
  m["subcommand"] = subcommand;
  m["config"] = config;
  m["data_version"] = data.Version();
  m["protocol_schema"] = std::string(protocol::kSchemaVersion);
  m["dataset_schema"] = trajectory::kDatasetSchemaVersion;
  m["outputs"] = outputs;
  m["created_at"] = UtcNow();
  WriteFile(path, m.dump(2) + "\n");
}

// "<dir>/manifest.json" for directory outputs, "<file>.manifest.json" otherwise.
fs::path ManifestFor(const fs::path& out, bool is_dir) {
  return is_dir ? out / "manifest.json" : fs::path(out.string() + ".manifest.json");
}

void Log(std::ostream& err, json line) { err << line.dump() << '\n'; }

inference::UsageStats LoadStats(const std::string& path) {
  const fs::path p = path.empty() ? data::GameData::DefaultDir() / "usage" : fs::path(path);
  if (fs::is_directory(p)) return inference::UsageStats::LoadDirectory(p);
  return inference::UsageStats::Load(p);
}

protocol::Mode ModeOf(bool strict) { return strict ? protocol::Mode::kStrict : protocol::Mode::kLenient; }

// ---------------------------------------------------------------- parse

struct ParseArgs {
  std::vector<std::string> inputs;
  std::string out;
  bool strict = false;
  bool anonymize = false;
};

int DoParse(const ParseArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  auto data = g.Data();
  const auto files = CollectInputs(a.inputs, {".log", ".txt"});
  const fs::path dir(a.out);
  EnsureDir(dir);
  struct Result {
    std::string text;
    size_t events = 0;
    std::optional<std::pair<ErrorCode, std::string>> error;
  };
  std::vector<Result> results(files.size());
  ParallelFor(static_cast<int>(files.size()), g.workers, [&](int i) {
    const std::string raw = ReadFile(files[i]);
    try {
      protocol::ReplayDocument doc = protocol::parse_replay(raw, {ModeOf(a.strict), a.anonymize});
      results[i].events = doc.events.size();
      results[i].text = protocol::serialize_replay(doc);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIo) throw;
      results[i].error = {e.code(), e.what()};
    }
  });
  json errors = json::array();
  std::map<std::string, int> histogram;
  size_t parsed = 0, events = 0;
  for (size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (results[i].error) {
      const std::string code(ErrorCodeName(results[i].error->first));
      ++histogram[code];
      errors.push_back({{"file", name}, {"reason", code}, {"detail", results[i].error->second}});
      Log(err, {{"event", "parse_error"}, {"file", name}, {"reason", code}});
      continue;
    }
    ++parsed;
    events += results[i].events;
    WriteFile(dir / (files[i].stem().string() + ".events.log"), results[i].text);
  }
  json report = {{"files", files.size()}, {"parsed", parsed}, {"failed", files.size() - parsed},
                 {"events", events}, {"errors", errors}, {"error_histogram", histogram}};
  WriteFile(dir / "parse_report.json", report.dump(2) + "\n");
  WriteManifest(ManifestFor(dir, true), "parse",
                {{"inputs", a.inputs}, {"strict", a.strict}, {"anonymize", a.anonymize}}, *data,
                {{"files", files.size()}, {"parsed", parsed}});
  out << "parsed " << parsed << "/" << files.size() << " files, " << events << " events\n";
  return kExitOk;
}

// ---------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string stats;
  std::string pov = "both";
  std::string fill;
  std::string finalize = "argmax";
  uint64_t seed = 0;
  bool strict = false;
  bool anonymize = false;
};

trajectory::FillPolicy AgentFill(const std::string& name, uint64_t seed) {
  std::shared_ptr<const agents::Agent> agent = agents::MakeAgent(name);
  return {agent->name(), [agent, seed](const engine::PovView& view, const trajectory::Observation&) {
            SeededRng rng(HashCombine(seed, HashCombine(static_cast<uint64_t>(view.tracker->turn()),
                                                        static_cast<uint64_t>(Index(view.pov)))));
            return agent->choose_action(view, view.LegalActions(), rng);
          }};
}

int DoReconstruct(const ReconstructArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  auto data = g.Data();
  const inference::UsageStats stats = LoadStats(a.stats);
  const auto files = CollectInputs(a.inputs, {".log", ".txt"});

  trajectory::ReconstructOptions options;
  options.pov = a.pov == "p1" ? trajectory::PovSelection::kP1
              : a.pov == "p2" ? trajectory::PovSelection::kP2
                              : trajectory::PovSelection::kBoth;
  if (!a.fill.empty()) options.fill = AgentFill(a.fill, a.seed);
  options.finalize.mode = a.finalize == "sample" ? inference::FillMode::kSample : inference::FillMode::kArgmax;
  options.finalize.seed = a.seed;

  struct Result {
    std::vector<trajectory::Trajectory> trajectories;
    std::optional<trajectory::Discarded> discarded;
  };
  std::vector<Result> results(files.size());
  ParallelFor(static_cast<int>(files.size()), g.workers, [&](int i) {
    const std::string raw = ReadFile(files[i]);
    protocol::ReplayDocument doc;
    try {
      doc = protocol::parse_replay(raw, {ModeOf(a.strict), a.anonymize});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIo) throw;
      results[i].discarded = trajectory::Discarded{e.code(), e.what()};
      return;
    }
    trajectory::ReconstructResult r = trajectory::reconstruct(doc, stats, data, options);
    results[i].trajectories = std::move(r.trajectories);
    results[i].discarded = std::move(r.discarded);
  });

  std::vector<trajectory::Trajectory> all;
  std::map<std::string, int> histogram;
  json discards = json::array();
  for (size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (results[i].discarded) {
      const std::string code(ErrorCodeName(results[i].discarded->reason));
      ++histogram[code];
      discards.push_back({{"file", name}, {"reason", code}, {"detail", results[i].discarded->detail}});
      Log(err, {{"event", "discard"}, {"file", name}, {"reason", code}});
      continue;
    }
    for (auto& t : results[i].trajectories) all.push_back(std::move(t));
  }
  const fs::path path(a.out);
  if (path.has_parent_path()) EnsureDir(path.parent_path());
  trajectory::write_dataset(all, path);
  const json report = {{"replays", files.size()},
                       {"kept", files.size() - discards.size()},
                       {"discarded", discards.size()},
                       {"trajectories", all.size()},
                       {"discard_histogram", histogram},
                       {"discards", discards}};
  WriteFile(path.string() + ".discards.json", report.dump(2) + "\n");
  WriteManifest(ManifestFor(path, false), "reconstruct",
                {{"inputs", a.inputs}, {"stats", a.stats}, {"pov", a.pov}, {"fill", a.fill},
                 {"finalize", a.finalize}, {"seed", a.seed}, {"strict", a.strict},
                 {"anonymize", a.anonymize}},
                *data,
                {{"replays", files.size()}, {"trajectories", all.size()}, {"discarded", discards.size()}});
  out << "reconstructed " << all.size() << " trajectories from " << files.size() << " replays, "
      << discards.size() << " discarded\n";
  return kExitOk;
}

// -------------------------------------------------------- team sources

struct TeamArgs {
  std::string format;
  std::string teams = "variety";  // "variety" or a team text file
  int variety_n = 1000;
  std::string stats;
};

eval::TeamSet LoadTeamSet(const TeamArgs& t, const data::GameData& data, uint64_t seed) {
  if (t.teams == "variety") {
    if (t.format.empty()) Fail(ErrorCode::kInvalidArgument, "--format is required with variety teams");
    return eval::generate_variety_teams(data, LoadStats(t.stats), t.format, t.variety_n, seed);
  }
  eval::TeamSet set = eval::load_competitive_teams(data, t.teams);
  if (!t.format.empty() && set.format_id != t.format)
    Fail(ErrorCode::kInvalidArgument, "team file is " + set.format_id + ", not " + t.format);
  return set;
}

json TeamConfig(const TeamArgs& t) {
  return {{"format", t.format}, {"teams", t.teams}, {"variety_n", t.variety_n}, {"stats", t.stats}};
}

// ---------------------------------------------------------------- battle

struct BattleArgs {
  std::vector<std::string> agents;
  TeamArgs teams;
  int n = 1;
  uint64_t seed = 0;
  int max_turns = engine::kDefaultMaxTurns;
  bool record = false;
  std::string out;
};

int DoBattle(const BattleArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  if (a.agents.size() != 2) Fail(ErrorCode::kInvalidArgument, "--agents takes exactly two names");
  auto first = agents::MakeAgent(a.agents[0]);
  auto second = agents::MakeAgent(a.agents[1]);
  const eval::TeamSet set = LoadTeamSet(a.teams, *data, a.seed);
  eval::MatchOptions mo;
  mo.max_turns = a.max_turns;
  mo.record = a.record;
  std::vector<eval::MatchResult> results(a.n);
  ParallelFor(a.n, g.workers, [&](int k) {
    results[k] = eval::run_match(*first, *second, set, data, HashCombine(a.seed, k), mo);
  });
  const fs::path dir(a.out);
  EnsureDir(dir);
  std::string lines;
  std::vector<trajectory::Trajectory> trajectories;
  std::array<int, 3> tally{0, 0, 0};  // first wins, second wins, ties
  for (int k = 0; k < a.n; ++k) {
    const auto& r = results[k];
    lines += eval::MatchResultToJson(r) + "\n";
    ++tally[r.winner < 0 ? 2 : r.winner];
    if (!a.record) continue;
    protocol::ReplayDocument doc;
    doc.events = r.events;
    char name[32];
    std::snprintf(name, sizeof(name), "game_%05d.log", k);
    WriteFile(dir / "logs" / name, protocol::serialize_replay(doc));
    trajectories.insert(trajectories.end(), r.trajectories.begin(), r.trajectories.end());
  }
  WriteFile(dir / "matches.jsonl", lines);
  if (a.record) trajectory::write_dataset(trajectories, dir / "trajectories.jsonl");
  WriteManifest(ManifestFor(dir, true), "battle",
                {{"agents", a.agents}, {"teams", TeamConfig(a.teams)}, {"n", a.n}, {"seed", a.seed},
                 {"max_turns", a.max_turns}, {"record", a.record}},
                *data,
                {{"matches", a.n}, {"first_wins", tally[0]}, {"second_wins", tally[1]},
                 {"ties", tally[2]}, {"trajectories", trajectories.size()}});
  out << first->name() << " " << tally[0] << " - " << tally[1] << " " << second->name() << " ("
      << tally[2] << " ties)\n";
  return kExitOk;
}

// ---------------------------------------------------- round-robin, composite

struct ArenaArgs {
  std::vector<std::string> agents;
  std::string agent;  // composite only
  TeamArgs teams;
  int n = 100;
  uint64_t seed = 0;
  int max_turns = engine::kDefaultMaxTurns;
  std::string out;
};

std::string Fixed(double v, int digits = 4) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

int DoRoundRobin(const ArenaArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  std::vector<std::string> names = a.agents.empty() ? agents::AgentNames() : a.agents;
  std::vector<std::unique_ptr<agents::Agent>> owned;
  std::vector<const agents::Agent*> players;
  for (const auto& n : names) {
    owned.push_back(agents::MakeAgent(n));
    players.push_back(owned.back().get());
  }
  const eval::TeamSet set = LoadTeamSet(a.teams, *data, a.seed);
  eval::ArenaOptions opts;
  opts.workers = g.workers;
  opts.match.max_turns = a.max_turns;
  const eval::RoundRobin rr = eval::round_robin(players, set, data, a.n, a.seed, opts);
  const fs::path dir(a.out);
  EnsureDir(dir);
  json j = {{"agents", rr.names}, {"rate", rr.rate}, {"games", rr.games}, {"errors", rr.errors}};
  WriteFile(dir / "round_robin.json", j.dump(2) + "\n");
  // Plot-ready matrix: row agent's score against the column agent.
  std::string tsv = "row";
  for (const auto& n : rr.names) tsv += "\t" + n;
  tsv += "\n";
  for (size_t i = 0; i < rr.names.size(); ++i) {
    tsv += rr.names[i];
    for (double v : rr.rate[i]) tsv += "\t" + Fixed(v);
    tsv += "\n";
  }
  WriteFile(dir / "round_robin.tsv", tsv);
  WriteManifest(ManifestFor(dir, true), "round-robin",
                {{"agents", names}, {"teams", TeamConfig(a.teams)}, {"n", a.n}, {"seed", a.seed},
                 {"max_turns", a.max_turns}},
                *data, {{"agents", rr.names.size()}, {"errors", rr.errors}});
  out << tsv;
  return kExitOk;
}

int DoComposite(const ArenaArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  auto agent = agents::MakeAgent(a.agent);
  const eval::TeamSet set = LoadTeamSet(a.teams, *data, a.seed);
  eval::ArenaOptions opts;
  opts.workers = g.workers;
  opts.match.max_turns = a.max_turns;
  const eval::Composite c = eval::heuristic_composite(*agent, set, data, a.n, a.seed, opts);
  const fs::path dir(a.out);
  EnsureDir(dir);
  json j = {{"agent", agent->name()}, {"opponents", c.opponents}, {"rates", c.rates},
            {"games", c.games}, {"score", c.score}};
  WriteFile(dir / "composite.json", j.dump(2) + "\n");
  std::string tsv = "opponent\trate\tgames\n";
  for (size_t i = 0; i < c.opponents.size(); ++i)
    tsv += c.opponents[i] + "\t" + Fixed(c.rates[i]) + "\t" + std::to_string(c.games[i]) + "\n";
  tsv += "composite\t" + Fixed(c.score) + "\t\n";
  WriteFile(dir / "composite.tsv", tsv);
  WriteManifest(ManifestFor(dir, true), "composite",
                {{"agent", a.agent}, {"teams", TeamConfig(a.teams)}, {"n", a.n}, {"seed", a.seed},
                 {"max_turns", a.max_turns}},
                *data, {{"score", c.score}});
  out << tsv;
  return kExitOk;
}

// ------------------------------------------------------------------ rate

struct RateArgs {
  std::vector<std::string> inputs;
  std::string out;
};

// Each input file is one rating period, applied in the order given.
int DoRate(const RateArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  std::vector<fs::path> files;
  for (const auto& in : a.inputs) {
    if (!fs::is_regular_file(in)) Fail(ErrorCode::kIo, "no such file: " + in);
    files.emplace_back(in);
  }
  std::map<std::string, eval::RatingState> ratings;
  std::map<std::string, std::array<int, 3>> record;  // wins, losses, ties
  size_t games = 0;
  for (size_t period = 0; period < files.size(); ++period) {
    std::map<std::string, std::vector<std::pair<std::string, double>>> played;
    std::istringstream in(ReadFile(files[period]));
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::array<std::string, 2> who;
      int winner = -1;
      try {
        json j = json::parse(line);
        who = {j.at("agents").at(0).get<std::string>(), j.at("agents").at(1).get<std::string>()};
        winner = j.at("winner_side").get<int>();
      } catch (const json::exception& e) {
        Fail(ErrorCode::kSchemaMismatch,
             files[period].string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (who[0] == who[1]) continue;  // self-play carries no rating information
      ++games;
      for (int s = 0; s < 2; ++s) {
        const double score = winner < 0 ? 0.5 : (winner == s ? 1.0 : 0.0);
        played[who[s]].push_back({who[1 - s], score});
        ++record[who[s]][winner < 0 ? 2 : (winner == s ? 0 : 1)];
        ratings.try_emplace(who[s]);
      }
    }
    // Opponents are read at their start-of-period values.
    const auto before = ratings;
    for (auto& [name, state] : ratings) {
      std::vector<eval::GameOutcome> outcomes;
      for (const auto& [opp, score] : played[name]) {
        const auto& o = before.at(opp);
        outcomes.push_back({o.rating, o.rd, score});
      }
      state = eval::glicko1_update(before.at(name), outcomes);
      state.last_period = static_cast<int>(period + 1);
    }
  }
  json report = json::array();
  std::string table = "agent\trating\trd\tgxe\twins\tlosses\tties\n";
  for (const auto& [name, state] : ratings) {
    const auto g_value = eval::gxe(state);
    const auto& r = record[name];
    report.push_back({{"agent", name}, {"rating", state.rating}, {"rd", state.rd},
                      {"gxe", g_value ? json(*g_value) : json(nullptr)}, {"wins", r[0]},
                      {"losses", r[1]}, {"ties", r[2]}});
    table += name + "\t" + Fixed(state.rating, 1) + "\t" + Fixed(state.rd, 1) + "\t" +
             (g_value ? Fixed(*g_value, 2) : std::string("-")) + "\t" + std::to_string(r[0]) + "\t" +
             std::to_string(r[1]) + "\t" + std::to_string(r[2]) + "\n";
  }
  const fs::path path(a.out);
  WriteFile(path, json({{"periods", files.size()}, {"games", games}, {"agents", report}}).dump(2) + "\n");
  WriteManifest(ManifestFor(path, false), "rate", {{"inputs", a.inputs}}, *data,
                {{"periods", files.size()}, {"games", games}, {"agents", ratings.size()}});
  out << table;
  return kExitOk;
}

// --------------------------------------------------------- dataset stats

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string out;
  int rating_bucket = 100;
  int length_bucket = 10;
};

std::string Bucket(int value, int width) {
  const int lo = value / width * width;
  return std::to_string(lo) + "-" + std::to_string(lo + width - 1);
}

int DoDatasetStats(const StatsArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  if (a.rating_bucket < 1 || a.length_bucket < 1)
    Fail(ErrorCode::kInvalidArgument, "bucket widths must be positive");
  const auto files = CollectInputs(a.inputs, {".jsonl"});
  size_t trajectories = 0, steps = 0, masked = 0, filled = 0;
  std::map<std::string, int> by_format, by_source, by_pov, ratings, lengths;
  for (const auto& f : files) {
    for (const auto& t : trajectory::read_dataset(f)) {
      ++trajectories;
      steps += t.steps.size();
      ++by_format[t.format_id];
      ++by_source[t.source];
      ++by_pov[std::string(SideId(t.pov))];
      ++ratings[t.rating ? Bucket(*t.rating, a.rating_bucket) : "unrated"];
      ++lengths[Bucket(static_cast<int>(t.steps.size()), a.length_bucket)];
      for (const auto& s : t.steps) {
        masked += s.action == trajectory::kMasked;
        filled += s.filled;
      }
    }
  }
  json j = {{"files", files.size()}, {"trajectories", trajectories}, {"steps", steps},
            {"masked_steps", masked}, {"filled_steps", filled}, {"by_format", by_format},
            {"by_source", by_source}, {"by_pov", by_pov}, {"rating_histogram", ratings},
            {"length_histogram", lengths}};
  const fs::path path(a.out);
  WriteFile(path, j.dump(2) + "\n");
  WriteManifest(ManifestFor(path, false), "dataset stats",
                {{"inputs", a.inputs}, {"rating_bucket", a.rating_bucket}, {"length_bucket", a.length_bucket}},
                *data, {{"files", files.size()}, {"trajectories", trajectories}, {"steps", steps}});
  out << "format\ttrajectories\n";
  for (const auto& [f, n] : by_format) out << f << "\t" << n << "\n";
  out << "total\t" << trajectories << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- teams

struct GenerateArgs {
  std::string format;
  int n = 1000;
  uint64_t seed = 0;
  std::string stats;
  double temperature = eval::VarietyOptions{}.temperature;
  double cap = eval::VarietyOptions{}.concentration_cap;
  std::string out;
};

int DoGenerateTeams(const GenerateArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  eval::VarietyOptions opts;
  opts.temperature = a.temperature;
  opts.concentration_cap = a.cap;
  const eval::TeamSet set =
      eval::generate_variety_teams(*data, LoadStats(a.stats), a.format, a.n, a.seed, opts);
  const fs::path path(a.out);
  WriteFile(path, eval::ExportTeams(set));
  WriteManifest(ManifestFor(path, false), "generate-teams",
                {{"format", a.format}, {"n", a.n}, {"seed", a.seed}, {"stats", a.stats},
                 {"temperature", a.temperature}, {"concentration_cap", a.cap}},
                *data, {{"teams", set.teams.size()}});
  out << "wrote " << set.teams.size() << " " << a.format << " teams\n";
  return kExitOk;
}

struct UsageArgs {
  std::vector<std::string> inputs;
  std::string out;
};

int DoUsageFromTeams(const UsageArgs& a, const Globals& g, std::ostream& out, std::ostream&) {
  auto data = g.Data();
  std::vector<engine::Team> teams;
  std::string format;
  for (const auto& f : CollectInputs(a.inputs, {".txt"})) {
    eval::TeamSet set = eval::load_competitive_teams(*data, f);
    if (format.empty()) format = set.format_id;
    if (set.format_id != format)
      Fail(ErrorCode::kInvalidArgument, "team files mix " + format + " and " + set.format_id);
    teams.insert(teams.end(), set.teams.begin(), set.teams.end());
  }
  if (teams.empty()) Fail(ErrorCode::kInvalidArgument, "no teams found");
  const fs::path path(a.out);
  WriteFile(path, inference::usage_from_teams(teams, format).ToJsonText() + "\n");
  WriteManifest(ManifestFor(path, false), "usage-from-teams", {{"inputs", a.inputs}}, *data,
                {{"format", format}, {"teams", teams.size()}});
  out << "usage for " << format << " from " << teams.size() << " teams\n";
  return kExitOk;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kIo: return kExitIo;
    default: return kExitData;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Battle log parsing, offline RL dataset building and agent evaluation", "battlelog"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data", g.data_dir, "Game data directory (default: bundled tables)");
  app.add_option("-j,--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);

  ParseArgs parse;
  auto* p = app.add_subcommand("parse", "Parse replay logs into canonical event dumps");
  p->add_option("inputs", parse.inputs, "Replay files or directories")->required();
  p->add_option("-o,--out", parse.out, "Output directory")->required();
  p->add_flag("--strict", parse.strict, "Reject unknown messages");
  p->add_flag("--anonymize", parse.anonymize, "Replace player names with pseudonyms");

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Turn replays into a trajectory dataset");
  r->add_option("inputs", rec.inputs, "Replay files or directories")->required();
  r->add_option("-o,--out", rec.out, "Dataset file (JSON lines)")->required();
  r->add_option("--stats", rec.stats, "Usage table file or directory");
  r->add_option("--pov", rec.pov, "Point of view")->check(CLI::IsMember({"p1", "p2", "both"}));
  r->add_option("--fill", rec.fill, "Agent that fills missing labels (default: leave masked)");
  r->add_option("--finalize", rec.finalize, "Team completion mode")
      ->check(CLI::IsMember({"argmax", "sample"}));
  r->add_option("--seed", rec.seed, "Seed for sampling and fill");
  r->add_flag("--strict", rec.strict, "Reject unknown messages");
  r->add_flag("--anonymize", rec.anonymize, "Replace player names with pseudonyms");

  auto add_teams = [](CLI::App* cmd, TeamArgs& t) {
    cmd->add_option("--format", t.format, "Format id, e.g. gen1ou");
    cmd->add_option("--teams", t.teams, "Team file, or 'variety'");
    cmd->add_option("--variety-n", t.variety_n, "Variety set size")->check(CLI::PositiveNumber);
    cmd->add_option("--stats", t.stats, "Usage tables for variety teams");
  };

  BattleArgs battle;
  auto* b = app.add_subcommand("battle", "Play one agent against another");
  b->add_option("--agents", battle.agents, "Two agent names")->required()->expected(2);
  add_teams(b, battle.teams);
  b->add_option("-n", battle.n, "Number of games")->check(CLI::PositiveNumber);
  b->add_option("--seed", battle.seed, "Base seed");
  b->add_option("--max-turns", battle.max_turns, "Turn cap")->check(CLI::PositiveNumber);
  b->add_flag("--record", battle.record, "Write logs and self-play trajectories");
  b->add_option("-o,--out", battle.out, "Output directory")->required();

  ArenaArgs rr;
  auto* rrc = app.add_subcommand("round-robin", "Win-rate matrix between agents");
  rrc->add_option("--agents", rr.agents, "Agent names (default: all)");
  add_teams(rrc, rr.teams);
  rrc->add_option("-n", rr.n, "Games per pairing")->check(CLI::PositiveNumber);
  rrc->add_option("--seed", rr.seed, "Base seed");
  rrc->add_option("--max-turns", rr.max_turns, "Turn cap")->check(CLI::PositiveNumber);
  rrc->add_option("-o,--out", rr.out, "Output directory")->required();

  ArenaArgs comp;
  auto* cc = app.add_subcommand("composite", "Mean win rate against the heuristic opponents");
  cc->add_option("--agent", comp.agent, "Agent name")->required();
  add_teams(cc, comp.teams);
  cc->add_option("-n", comp.n, "Games per opponent")->check(CLI::PositiveNumber);
  cc->add_option("--seed", comp.seed, "Base seed");
  cc->add_option("--max-turns", comp.max_turns, "Turn cap")->check(CLI::PositiveNumber);
  cc->add_option("-o,--out", comp.out, "Output directory")->required();

  RateArgs rate;
  auto* rt = app.add_subcommand("rate", "Glicko-1 and GXE from match results");
  rt->add_option("inputs", rate.inputs, "matches.jsonl files, one rating period each")->required();
  rt->add_option("-o,--out", rate.out, "Report file")->required();

  StatsArgs stats;
  auto* ds = app.add_subcommand("dataset", "Dataset utilities");
  ds->require_subcommand(1);
  auto* st = ds->add_subcommand("stats", "Counts by format, rating and length");
  st->add_option("inputs", stats.inputs, "Dataset files or directories")->required();
  st->add_option("-o,--out", stats.out, "Report file")->required();
  st->add_option("--rating-bucket", stats.rating_bucket, "Rating histogram width");
  st->add_option("--length-bucket", stats.length_bucket, "Length histogram width");

  GenerateArgs gen;
  auto* gt = app.add_subcommand("generate-teams", "Sample a diverse team set");
  gt->add_option("--format", gen.format, "Format id")->required();
  gt->add_option("-n", gen.n, "Number of teams")->check(CLI::PositiveNumber);
  gt->add_option("--seed", gen.seed, "Seed");
  gt->add_option("--stats", gen.stats, "Usage tables");
  gt->add_option("--temperature", gen.temperature, "Sampling temperature")->check(CLI::PositiveNumber);
  gt->add_option("--cap", gen.cap, "Species concentration cap")->check(CLI::PositiveNumber);
  gt->add_option("-o,--out", gen.out, "Team text file")->required();

  UsageArgs usage;
  auto* ut = app.add_subcommand("usage-from-teams", "Usage tables from team files");
  ut->add_option("inputs", usage.inputs, "Team files or directories")->required();
  ut->add_option("-o,--out", usage.out, "Usage JSON file")->required();

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();  // program name
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (p->parsed()) return DoParse(parse, g, out, err);
    if (r->parsed()) return DoReconstruct(rec, g, out, err);
    if (b->parsed()) return DoBattle(battle, g, out, err);
    if (rrc->parsed()) return DoRoundRobin(rr, g, out, err);
    if (cc->parsed()) return DoComposite(comp, g, out, err);
    if (rt->parsed()) return DoRate(rate, g, out, err);
    if (st->parsed()) return DoDatasetStats(stats, g, out, err);
    if (gt->parsed()) return DoGenerateTeams(gen, g, out, err);
    if (ut->parsed()) return DoUsageFromTeams(usage, g, out, err);
  } catch (const Error& e) {
    Log(err, {{"event", "error"}, {"code", std::string(ErrorCodeName(e.code()))}, {"detail", e.what()}});
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    Log(err, {{"event", "error"}, {"code", "Internal"}, {"detail", e.what()}});
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace battlelog::cli
