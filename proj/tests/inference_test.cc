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

#include "doctest.h"
#include "test_util.h"

namespace battlelog::inference {
namespace {

using protocol::parse_line;

std::shared_ptr<const data::GameData> Data() { return data::GameData::Default(); }

UsageStats Fixture() {
  return UsageStats::Load(std::string(BATTLELOG_FIXTURE_DIR) + "/usage_small.json");
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

PartialPokemon Known(const std::string& species, std::vector<std::string> moves,
                     const std::string& item = "", const std::string& ability = "") {
  PartialPokemon p;
  p.nickname = species;
  p.species.value = species;
  p.level.value = 100;
  for (auto& m : moves) {
    Revealed<std::string> r;
    r.value = m;
    p.moves.push_back(r);
  }
  if (!item.empty()) p.item.value = item;
  if (!ability.empty()) p.ability.value = ability;
  return p;
}

TEST_CASE("move reveal records the turn") {
  PartialTeam t;
  t.side = Side::kP2;
  update_from_event(t, parse_line("|switch|p2a: Star|Starmie|100/100"), 1, 10);
  update_from_event(t, parse_line("|move|p2a: Star|Psychic|p1a: X"), 1, 11);
  update_from_event(t, parse_line("|move|p2a: Star|Recover|p2a: Star"), 2, 20);
  update_from_event(t, parse_line("|move|p2a: Star|Surf|p1a: X"), 3, 30);
  REQUIRE(t.slots.size() == 1);
  REQUIRE(t.slots[0].moves.size() == 3);
  CHECK(*t.slots[0].moves[2].value == "Surf");
  CHECK(t.slots[0].moves[2].turn == 3);
  CHECK(t.slots[0].moves[2].event == 30);
  CHECK(*t.slots[0].species.value == "Starmie");
  CHECK(t.slots[0].species.turn == 1);
  // Events about the other side are ignored.
  update_from_event(t, parse_line("|switch|p1a: Tauros|Tauros|100/100"), 3, 31);
  CHECK(t.slots.size() == 1);
}

TEST_CASE("item reveals") {
  PartialTeam t;
  t.side = Side::kP1;
  update_from_event(t, parse_line("|switch|p1a: Snorlax|Snorlax|100/100"), 1, 0);
  update_from_event(t, parse_line("|-heal|p1a: Snorlax|60/100|[from] item: Leftovers"), 2, 1);
  CHECK(t.slots[0].item.value == "Leftovers");
  CHECK(CodeOf([&] {
          update_from_event(t, parse_line("|-enditem|p1a: Snorlax|Lum Berry|[eat]"), 3, 2);
        }) == ErrorCode::kContradictoryReveal);
  PartialTeam u;
  u.side = Side::kP1;
  update_from_event(u, parse_line("|switch|p1a: Snorlax|Snorlax|100/100"), 1, 0);
  update_from_event(u, parse_line("|-enditem|p1a: Snorlax|Lum Berry|[eat]"), 2, 1);
  CHECK_NOTHROW(update_from_event(u, parse_line("|-item|p1a: Snorlax|Leftovers"), 3, 2));
  CHECK(u.slots[0].item.value == "Lum Berry");
}

TEST_CASE("a fifth move contradicts") {
  PartialTeam t;
  t.side = Side::kP1;
  update_from_event(t, parse_line("|switch|p1a: Tauros|Tauros|100/100"), 1, 0);
  for (const char* m : {"Body Slam", "Earthquake", "Blizzard", "Rest"})
    update_from_event(t, parse_line(std::string("|move|p1a: Tauros|") + m + "|p2a: X"), 1, 0);
  CHECK(CodeOf([&] {
          update_from_event(t, parse_line("|move|p1a: Tauros|Fire Blast|p2a: X"), 2, 0);
        }) == ErrorCode::kContradictoryReveal);
}

TEST_CASE("ability reveals through tags") {
  PartialTeam t;
  t.side = Side::kP2;
  update_from_event(t, parse_line("|switch|p2a: Ttar|Tyranitar|100/100"), 0, 0);
  update_from_event(
      t, parse_line("|-weather|Sandstorm|[from] ability: Sand Stream|[of] p2a: Ttar"), 0, 1);
  CHECK(t.slots[0].ability.value == "Sand Stream");
  update_from_event(t, parse_line("|switch|p2a: Bronzong|Bronzong|100/100"), 1, 2);
  update_from_event(t, parse_line("|-immune|p2a: Bronzong|[from] ability: Levitate"), 1, 3);
  CHECK(t.slots[1].ability.value == "Levitate");
}

TEST_CASE("a fully revealed team is returned unchanged") {
  auto data = Data();
  engine::Team truth = testing::RandomTeam(*data, "gen3ou", 4);
  PartialTeam t;
  for (const auto& p : truth) t.slots.push_back(Known(p.species, p.moves, p.item, p.ability));
  // Items that were never held still need a reveal to count as known; mark them explicitly.
  for (auto& s : t.slots)
    if (!s.item.Known()) s.item.value = "";
  UsageStats stats = usage_from_teams({truth}, "gen3ou");
  CHECK(finalize(t, stats, "gen3ou", *data) == truth);
}

TEST_CASE("argmax fills the most frequent unrevealed move") {
  auto data = Data();
  UsageStats stats = Fixture();
  PartialTeam t;
  t.slots.push_back(Known("Tauros", {"Body Slam", "Earthquake", "Rest"}));
  t.team_size = 1;
  engine::Team out = finalize(t, stats, "gen1ou", *data);
  // Brute force over the table: best-scoring legal move not yet revealed.
  const auto& table = stats.Find("gen1ou")->pokemon.at("Tauros").moves;
  std::string best;
  double best_f = -1;
  for (const auto& [m, f] : table) {
    bool revealed = m == "Body Slam" || m == "Earthquake" || m == "Rest";
    if (!revealed && data->MoveLegal(data->Species("Tauros"), m, 1) && f > best_f) {
      best = m;
      best_f = f;
    }
  }
  CHECK(best == "Blizzard");
  REQUIRE(out[0].moves.size() == 4);
  CHECK(out[0].moves[3] == best);
}

TEST_CASE("argmax fills the sixth species by co-occurrence") {
  auto data = Data();
  UsageStats stats = Fixture();
  const FormatUsage& fu = *stats.Find("gen1ou");
  std::vector<std::string> revealed = {"Tauros", "Snorlax", "Chansey", "Exeggutor", "Alakazam"};
  PartialTeam t;
  for (const auto& s : revealed) t.slots.push_back(Known(s, {"Body Slam"}));
  for (auto& s : t.slots) s.moves.clear();
  engine::Team out = finalize(t, stats, "gen1ou", *data);
  REQUIRE(out.size() == 6);
  std::string best;
  double best_score = -1;
  for (const auto& [cand, u] : fu.species) {
    if (std::find(revealed.begin(), revealed.end(), cand) != revealed.end()) continue;
    double score = 0;
    for (const auto& r : revealed) {
      auto it = fu.pokemon.find(r);
      if (it == fu.pokemon.end()) continue;
      auto jt = it->second.teammates.find(cand);
      if (jt != it->second.teammates.end()) score += jt->second;
    }
    if (score > best_score) {
      best = cand;
      best_score = score;
    }
  }
  CHECK(best == "Zapdos");
  CHECK(out[5].species == best);
}

TEST_CASE("species without stats borrow the format move table") {
  auto data = Data();
  UsageStats stats = Fixture();
  PartialTeam t;
  t.team_size = 1;
  t.slots.push_back(Known("Lapras", {}));
  engine::Team out = finalize(t, stats, "gen1ou", *data);
  Frequencies table = FormatMoveTable(*stats.Find("gen1ou"));
  REQUIRE_FALSE(out[0].moves.empty());
  // Every filled move is a legal move the format table knows about.
  for (const auto& m : out[0].moves) {
    CHECK(table.count(m) == 1);
    CHECK(data->MoveLegal(data->Species("Lapras"), m, 1));
  }
}

TEST_CASE("missing stats") {
  auto data = Data();
  PartialTeam t;
  t.slots.push_back(Known("Tauros", {"Body Slam"}));
  CHECK(CodeOf([&] { finalize(t, UsageStats{}, "gen1ou", *data); }) == ErrorCode::kEmptyStats);
}

TEST_CASE("argmax is idempotent and sampling reproducible") {
  auto data = Data();
  UsageStats stats = Fixture();
  PartialTeam t;
  t.slots.push_back(Known("Tauros", {"Body Slam"}));
  t.slots.push_back(Known("Chansey", {}));
  engine::Team once = finalize(t, stats, "gen1ou", *data);
  PartialTeam again;
  for (const auto& p : once) again.slots.push_back(Known(p.species, p.moves, p.item, p.ability));
  for (auto& s : again.slots) s.item.value = "";
  CHECK(finalize(again, stats, "gen1ou", *data) == once);
  CHECK(finalize(t, stats, "gen1ou", *data) == once);
  FinalizeOptions a{FillMode::kSample, 7};
  CHECK(finalize(t, stats, "gen1ou", *data, a) == finalize(t, stats, "gen1ou", *data, a));
  bool differs = false;
  for (uint64_t seed = 1; seed < 30 && !differs; ++seed)
    differs = finalize(t, stats, "gen1ou", *data, {FillMode::kSample, seed}) != once;
  CHECK(differs);
}

TEST_CASE("usage file validation and round trip") {
  CHECK(CodeOf([] {
          UsageStats::FromJsonText(R"({"schema_version":1,"formats":{"gen1ou":{"species":{"Tauros":1.5}}}})");
        }) == ErrorCode::kSchemaMismatch);
  CHECK(CodeOf([] {
          UsageStats::FromJsonText(R"({"schema_version":1,"formats":{"gen1ou":{"species":{"Tauros":-0.1}}}})");
        }) == ErrorCode::kSchemaMismatch);
  CHECK(CodeOf([] { UsageStats::FromJsonText(R"({"schema_version":2,"formats":{}})"); }) ==
        ErrorCode::kSchemaMismatch);
  auto data = Data();
  std::vector<engine::Team> teams;
  for (uint64_t s = 0; s < 20; ++s) teams.push_back(testing::RandomTeam(*data, "gen2ou", s));
  UsageStats u = usage_from_teams(teams, "gen2ou");
  UsageStats back = UsageStats::FromJsonText(u.ToJsonText());
  CHECK(back.ToJsonText() == u.ToJsonText());
  for (const auto& [sp, f] : u.Find("gen2ou")->species) {
    CHECK(f > 0);
    CHECK(f <= 1);
  }
}

TEST_CASE("prior merge weights both sources") {
  UsageStats a, b;
  a.formats["gen1ou"].species["Tauros"] = 0.8;
  b.formats["gen1ou"].species["Tauros"] = 0.4;
  b.formats["gen1ou"].species["Snorlax"] = 1.0;
  UsageStats m = MergeUsage(a, b, kDefaultPriorWeight);
  CHECK(m.Find("gen1ou")->species.at("Tauros") == doctest::Approx(0.6));
  CHECK(m.Find("gen1ou")->species.at("Snorlax") == doctest::Approx(0.5));
}

}  // namespace
}  // namespace battlelog::inference
