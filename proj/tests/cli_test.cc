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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "battlelog/evalharness.h"
#include "battlelog/trajectory.h"
#include "doctest.h"
#include "json.hpp"

namespace battlelog::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation Call(std::vector<std::string> args) {
  args.insert(args.begin(), "battlelog");
  std::ostringstream out, err;
  Invocation r;
  r.code = Run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json Manifest(const fs::path& p) {
  json j = json::parse(Slurp(p));
  j.erase("created_at");
  return j;
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) {
    dir = fs::temp_directory_path() / ("battlelog_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& rel) const { return (dir / rel).string(); }
};

std::string TeamFile(const std::string& format) {
  return (data::GameData::DefaultDir() / "teams" / (format + "_competitive.txt")).string();
}

TEST_CASE("usage errors exit with the usage code") {
  CHECK(Call({}).code == kExitUsage);
  CHECK(Call({"frobnicate"}).code == kExitUsage);
  CHECK(Call({"battle", "--agents", "grunt"}).code == kExitUsage);
  CHECK(Call({"--help"}).code == kExitOk);
  Scratch s("usage");
  CHECK(Call({"battle", "--agents", "grunt", "minimax", "--format", "gen1ou", "-o", s / "x"}).code ==
        kExitUsage);
}

TEST_CASE("missing inputs exit with the io code and a structured line") {
  Scratch s("io");
  Invocation r = Call({"parse", s / "absent", "-o", s / "out"});
  CHECK(r.code == kExitIo);
  json line = json::parse(r.err.substr(0, r.err.find('\n')));
  CHECK(line["event"] == "error");
  CHECK(line["code"] == "Io");
}

TEST_CASE("bad data exits with the data code") {
  Scratch s("data");
  std::ofstream(s / "bad.txt") << "not a team\n";
  CHECK(Call({"composite", "--agent", "grunt", "--teams", s / "bad.txt", "-o", s / "c"}).code == kExitData);
  std::ofstream(s / "bad.jsonl") << "{\"schema_version\": 99}\n";
  CHECK(Call({"dataset", "stats", s / "bad.jsonl", "-o", s / "st.json"}).code == kExitData);
}

TEST_CASE("empty input directory gives empty outputs and a zero-count manifest") {
  Scratch s("empty");
  fs::create_directories(s / "in");
  Invocation r = Call({"reconstruct", s / "in", "-o", s / "ds.jsonl"});
  REQUIRE(r.code == kExitOk);
  CHECK(fs::file_size(s / "ds.jsonl") == 0);
  json m = Manifest(s / "ds.jsonl.manifest.json");
  CHECK(m["subcommand"] == "reconstruct");
  CHECK(m["outputs"]["replays"] == 0);
  CHECK(m["outputs"]["trajectories"] == 0);
  CHECK(m["outputs"]["discarded"] == 0);
  CHECK(m["data_version"].get<std::string>().size() > 0);

  REQUIRE(Call({"parse", s / "in", "-o", s / "parsed"}).code == kExitOk);
  CHECK(Manifest(s / "parsed/manifest.json")["outputs"]["files"] == 0);
  REQUIRE(Call({"dataset", "stats", s / "in", "-o", s / "st.json"}).code == kExitOk);
  CHECK(json::parse(Slurp(s / "st.json"))["trajectories"] == 0);
}

TEST_CASE("engine-generated corpus reconstructs with no discards, twice identically") {
  Scratch s("corpus");
  REQUIRE(Call({"battle", "--agents", "gymleader", "random", "--format", "gen3ou", "--variety-n", "50",
                "-n", "12", "--seed", "4", "--record", "-o", s / "b"})
              .code == kExitOk);
  CHECK(fs::exists(s / "b/logs/game_00011.log"));
  Invocation first = Call({"-j", "3", "reconstruct", s / "b/logs", "-o", s / "one.jsonl"});
  REQUIRE(first.code == kExitOk);
  Invocation second = Call({"reconstruct", s / "b/logs", "-o", s / "two.jsonl"});
  REQUIRE(second.code == kExitOk);
  json report = json::parse(Slurp(s / "one.jsonl.discards.json"));
  CHECK(report["discarded"] == 0);
  CHECK(report["trajectories"] == 24);
  CHECK(Slurp(s / "one.jsonl") == Slurp(s / "two.jsonl"));
  json m1 = Manifest(s / "one.jsonl.manifest.json");
  json m2 = Manifest(s / "two.jsonl.manifest.json");
  m1["config"].erase("inputs");
  m2["config"].erase("inputs");
  CHECK(m1 == m2);
  CHECK(trajectory::read_dataset(s / "one.jsonl").size() == 24);

  // Parse dumps are canonical: parsing a dump reproduces it byte for byte.
  REQUIRE(Call({"parse", s / "b/logs", "-o", s / "p1"}).code == kExitOk);
  REQUIRE(Call({"parse", s / "p1", "-o", s / "p2"}).code == kExitOk);
  CHECK(Slurp(s / "p1/game_00003.events.log") ==
        Slurp(s / "p2/game_00003.events.events.log"));

  // POV, fill and anonymize flags reach the pipeline.
  REQUIRE(Call({"reconstruct", s / "b/logs", "-o", s / "p1.jsonl", "--pov", "p1", "--fill", "grunt",
                "--anonymize"})
              .code == kExitOk);
  auto filled = trajectory::read_dataset(s / "p1.jsonl");
  CHECK(filled.size() == 12);
  bool any_filled = false;
  for (const auto& t : filled) {
    CHECK(t.pov == Side::kP1);
    CHECK(t.fill_policy == "Grunt");
    for (const auto& st : t.steps) any_filled |= st.filled;
  }
  CHECK(any_filled);
}

TEST_CASE("discard reasons are reported per file") {
  Scratch s("discard");
  REQUIRE(Call({"battle", "--agents", "grunt", "grunt", "--format", "gen1ou", "--variety-n", "20", "-n",
                "2", "--record", "-o", s / "b"})
              .code == kExitOk);
  std::string log = Slurp(s / "b/logs/game_00000.log");
  std::ofstream(s / "b/logs/game_00000.log") << log.substr(0, log.rfind("|win|"));
  Invocation r = Call({"reconstruct", s / "b/logs", "-o", s / "ds.jsonl"});
  REQUIRE(r.code == kExitOk);
  json report = json::parse(Slurp(s / "ds.jsonl.discards.json"));
  CHECK(report["discarded"] == 1);
  CHECK(report["discard_histogram"]["TruncatedLog"] == 1);
  CHECK(r.err.find("\"reason\":\"TruncatedLog\"") != std::string::npos);
}

TEST_CASE("dataset stats on a ten-trajectory fixture") {
  Scratch s("stats");
  auto data = data::GameData::Default();
  eval::TeamSet set = eval::load_competitive_teams(*data, TeamFile("gen1ou"));
  auto grunt = agents::MakeAgent("grunt");
  eval::MatchOptions mo;
  mo.record = true;
  const trajectory::Trajectory base = eval::run_match(*grunt, *grunt, set, data, 1, mo).trajectories[0];
  REQUIRE(base.steps.size() >= 9);
  // Known layout: formats 6/4, ratings three unrated plus 1500s and 1600s,
  // lengths 1..9 and one of 9.
  std::vector<trajectory::Trajectory> ts;
  for (int i = 0; i < 10; ++i) {
    trajectory::Trajectory t = base;
    t.format_id = i < 6 ? "gen1ou" : "gen2ou";
    t.rating = i < 3 ? std::nullopt : std::optional<int>(i < 7 ? 1510 + i : 1650);
    t.pov = i % 2 ? Side::kP2 : Side::kP1;
    t.steps.resize(i < 9 ? i + 1 : 9);
    for (auto& st : t.steps) st.action = 0;
    t.steps[0].action = trajectory::kMasked;
    ts.push_back(t);
  }
  trajectory::write_dataset(ts, s / "fixture.jsonl");
  REQUIRE(Call({"dataset", "stats", s / "fixture.jsonl", "-o", s / "st.json", "--length-bucket", "5"}).code ==
          kExitOk);
  json j = json::parse(Slurp(s / "st.json"));
  CHECK(j["trajectories"] == 10);
  CHECK(j["steps"] == 1 + 2 + 3 + 4 + 5 + 6 + 7 + 8 + 9 + 9);
  CHECK(j["masked_steps"] == 10);
  CHECK(j["by_format"] == json({{"gen1ou", 6}, {"gen2ou", 4}}));
  CHECK(j["by_pov"] == json({{"p1", 5}, {"p2", 5}}));
  CHECK(j["rating_histogram"] == json({{"unrated", 3}, {"1500-1599", 4}, {"1600-1699", 3}}));
  CHECK(j["length_histogram"] == json({{"0-4", 4}, {"5-9", 6}}));
  CHECK(Manifest(s / "st.json.manifest.json")["outputs"]["trajectories"] == 10);
}

TEST_CASE("arena subcommands write matrices and scores") {
  Scratch s("arena");
  REQUIRE(Call({"round-robin", "--agents", "random", "grunt", "--teams", TeamFile("gen2ou"), "-n", "10",
                "-o", s / "rr"})
              .code == kExitOk);
  json rr = json::parse(Slurp(s / "rr/round_robin.json"));
  CHECK(rr["agents"] == json({"RandomBaseline", "Grunt"}));
  CHECK(rr["rate"][0][1].get<double>() + rr["rate"][1][0].get<double>() == doctest::Approx(1.0));
  CHECK(Slurp(s / "rr/round_robin.tsv").rfind("row\tRandomBaseline\tGrunt\n", 0) == 0);

  REQUIRE(Call({"composite", "--agent", "grunt", "--teams", TeamFile("gen2ou"), "-n", "4", "-o", s / "c"})
              .code == kExitOk);
  json c = json::parse(Slurp(s / "c/composite.json"));
  CHECK(c["opponents"].size() == 6);

  REQUIRE(Call({"battle", "--agents", "grunt", "random", "--teams", TeamFile("gen2ou"), "-n", "10", "-o",
                s / "b"})
              .code == kExitOk);
  REQUIRE(Call({"rate", s / "b/matches.jsonl", "-o", s / "rate.json"}).code == kExitOk);
  json rate = json::parse(Slurp(s / "rate.json"));
  CHECK(rate["games"] == 10);
  REQUIRE(rate["agents"].size() == 2);
  CHECK(rate["agents"][0]["agent"] == "Grunt");
  CHECK(rate["agents"][0]["rating"].get<double>() > rate["agents"][1]["rating"].get<double>());
  CHECK(rate["agents"][0]["gxe"].is_null());  // RD still above the cutoff
}

TEST_CASE("team generation and usage derivation") {
  Scratch s("teams");
  REQUIRE(Call({"generate-teams", "--format", "gen4ou", "-n", "30", "--seed", "8", "-o", s / "v.txt"}).code ==
          kExitOk);
  REQUIRE(Call({"generate-teams", "--format", "gen4ou", "-n", "30", "--seed", "8", "-o", s / "w.txt"}).code ==
          kExitOk);
  CHECK(Slurp(s / "v.txt") == Slurp(s / "w.txt"));
  auto data = data::GameData::Default();
  CHECK(eval::load_competitive_teams(*data, s / "v.txt").teams.size() == 30);
  REQUIRE(Call({"usage-from-teams", s / "v.txt", "-o", s / "u.json"}).code == kExitOk);
  const auto stats = inference::UsageStats::Load(s / "u.json");
  REQUIRE(stats.Find("gen4ou") != nullptr);
  // The bundled tables are exactly what this subcommand derives.
  REQUIRE(Call({"usage-from-teams", TeamFile("gen3ou"), "-o", s / "g3.json"}).code == kExitOk);
  CHECK(Slurp(s / "g3.json") == Slurp(data::GameData::DefaultDir() / "usage" / "gen3ou.json"));
}

}  // namespace
}  // namespace battlelog::cli
