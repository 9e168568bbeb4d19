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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "test_util.h"

namespace battlelog::trajectory {
namespace {

using protocol::ProtocolEvent;

std::shared_ptr<const data::GameData> Data() { return data::GameData::Default(); }

protocol::ReplayDocument Doc(const std::vector<ProtocolEvent>& events) {
  return protocol::parse_replay(testing::Join(events), {protocol::Mode::kStrict, false});
}

ReconstructOptions KnownTeams(const testing::RecordedBattle& rb) {
  ReconstructOptions o;
  o.source = "selfplay";
  o.known_teams = {rb.teams[0], rb.teams[1]};
  return o;
}

int SlotOf(std::string_view name) {
  const auto& names = TokenSlotNames();
  for (int i = 0; i < kNumTokens; ++i)
    if (names[i] == name) return i;
  FAIL("no slot " << name);
  return -1;
}

int NumericOf(std::string_view name) {
  const auto& names = NumericSlotNames();
  for (int i = 0; i < kNumNumeric; ++i)
    if (names[i] == name) return i;
  FAIL("no numeric slot " << name);
  return -1;
}

// The word a label points at, read back from the observation itself.
std::string LabelWord(const Observation& obs, int action) {
  if (action < engine::kFirstSwitch)
    return obs.words[SlotOf("own_move_" + std::to_string(action))];
  return obs.words[SlotOf("own_bench_" + std::to_string(action - engine::kFirstSwitch) + "_species")];
}

std::filesystem::path TempFile(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("battlelog_" + name);
}

TEST_CASE("reward examples") {
  RewardDeltas hit;
  hit.opp_hp = -0.4;
  hit.own_hp = -0.1;
  hit.opp_status = 1;
  CHECK(compute_reward(hit, 0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(compute_reward(RewardDeltas{}, 0) == 0.0);
  RewardDeltas ko;
  ko.opp_hp = -0.25;
  ko.opp_faints = 1;
  CHECK(compute_reward(ko, 1) == doctest::Approx(101.25).epsilon(1e-12));
  CHECK(compute_reward(RewardDeltas{}, -1) == -100.0);
}

TEST_CASE("slot names are unique and complete") {
  std::set<std::string_view> t(TokenSlotNames().begin(), TokenSlotNames().end());
  std::set<std::string_view> n(NumericSlotNames().begin(), NumericSlotNames().end());
  CHECK(t.size() == kNumTokens);
  CHECK(n.size() == kNumNumeric);
}

TEST_CASE("first observation: no conditions and full health") {
  auto data = Data();
  auto rb = testing::RandomBattle(data, "gen2ou", 7);
  auto res = reconstruct(Doc(rb.events), {}, data, KnownTeams(rb));
  REQUIRE(res.ok());
  for (const auto& t : res.trajectories) {
    const Observation& o = t.steps.front().obs;
    for (const char* s : {"own_side_spikes", "own_side_reflect", "own_side_light_screen",
                          "opp_side_spikes", "opp_side_reflect", "opp_side_light_screen", "weather",
                          "own_volatile_confusion", "opp_volatile_confusion"})
      CHECK(o.words[SlotOf(s)] == std::string(kPad));
    CHECK(o.numeric[NumericOf("own_active_hp")] == 1.0);
    CHECK(o.numeric[NumericOf("opp_active_hp")] == 1.0);
    for (int i = 0; i < 5; ++i) CHECK(o.numeric[NumericOf("own_bench_" + std::to_string(i) + "_hp")] == 1.0);
    CHECK(o.numeric[NumericOf("opp_revealed")] == doctest::Approx(1.0 / 6));
    CHECK(o.words[SlotOf("phase")] == "move");
    CHECK(o.words[SlotOf("format")] == "gen2ou");
  }
}

TEST_CASE("opponent bench never appears in the observation") {
  auto data = Data();
  bool saw_two = false;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto rb = testing::RandomBattle(data, "gen1ou", seed);
    auto doc = Doc(rb.events);
    auto res = reconstruct(doc, {}, data, KnownTeams(rb));
    REQUIRE(res.ok());
    for (const auto& t : res.trajectories) {
      const Side foe = Other(t.pov);
      engine::Tracker tr(data);
      size_t next = 0;
      for (const Step& st : t.steps) {
        while (next < st.event_index) tr.apply_event(doc.events[next++]);
        // Replay up to the decision (turn decisions are taken after the turn event).
        if (next == st.event_index && doc.events[next].Is<protocol::Turn>())
          tr.apply_event(doc.events[next++]);
        const auto& side = tr.side(foe);
        const double revealed = st.obs.numeric[NumericOf("opp_revealed")];
        CHECK(revealed == doctest::Approx(side.roster.size() / 6.0));
        if (side.roster.size() == 2) saw_two = true;
        std::set<std::string> own;
        for (const auto& p : rb.teams[Index(t.pov)]) own.insert(ToId(p.species));
        for (int i = 0; i < static_cast<int>(side.roster.size()); ++i) {
          if (i == side.active) continue;
          const std::string sp = ToId(side.roster[i].species);
          if (own.count(sp)) continue;
          for (const auto& w : st.obs.words) CHECK(w != sp);
        }
        // Unrevealed opponents cannot be named either.
        for (const auto& p : rb.teams[Index(foe)]) {
          if (side.FindSpecies(p.species) >= 0 || own.count(ToId(p.species))) continue;
          for (const auto& w : st.obs.words) CHECK(w != ToId(p.species));
        }
      }
    }
  }
  CHECK(saw_two);
}

TEST_CASE("own Pokemon asleep two turns shows sleep and two scaled turns") {
  auto data = Data();
  engine::PokemonSpec chansey{"Chansey", 100, {"Softboiled"}, "", ""};
  engine::PokemonSpec jynx{"Jynx", 100, {"Lovely Kiss"}, "", ""};
  bool found = false;
  for (uint64_t seed = 0; seed < 50 && !found; ++seed) {
    engine::BattleConfig cfg;
    cfg.format_id = "gen1ou";
    cfg.seed = seed;
    cfg.max_turns = 12;
    cfg.teams = {engine::Team{chansey}, engine::Team{jynx}};
    std::vector<ProtocolEvent> events;
    engine::BattleState st = engine::NewBattle(data, cfg, &events);
    while (!st.outcome.Over()) {
      auto r = engine::step(st, 0, 0);
      events.insert(events.end(), r.events.begin(), r.events.end());
    }
    ReconstructOptions o;
    o.known_teams = {cfg.teams[0], cfg.teams[1]};
    o.pov = PovSelection::kP1;
    auto res = reconstruct(Doc(events), {}, data, o);
    REQUIRE(res.ok());
    for (const Step& s : res.trajectories[0].steps) {
      // Oracle: count the sleep "cant" lines since Chansey last fell asleep.
      int asleep = 0;
      for (size_t i = 0; i < s.event_index; ++i) {
        const auto& e = events[i];
        if (auto* st2 = e.As<protocol::SetStatus>(); st2 && st2->target.side == Side::kP1) asleep = 0;
        if (auto* c = e.As<protocol::Cant>(); c && c->target.side == Side::kP1 && c->reason == "slp")
          ++asleep;
      }
      if (asleep == 2 && s.obs.words[SlotOf("own_active_status")] == "sleep") {
        CHECK(s.obs.numeric[NumericOf("own_sleep_turns")] == doctest::Approx(2.0 / 7));
        CHECK(s.obs.numeric[NumericOf("opp_sleep_turns")] == 0.0);
        found = true;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("closed loop with known teams reproduces every choice") {
  auto data = Data();
  for (const char* format : {"gen1ou", "gen2ou", "gen3ou", "gen4ou"}) {
    for (uint64_t seed = 100; seed < 110; ++seed) {
      auto rb = testing::RandomBattle(data, format, seed);
      auto res = reconstruct(Doc(rb.events), {}, data, KnownTeams(rb));
      REQUIRE_MESSAGE(res.ok(), res.discarded->detail);
      REQUIRE(res.trajectories.size() == 2);
      for (const auto& t : res.trajectories) {
        const auto& choices = rb.choices[Index(t.pov)];
        REQUIRE(t.steps.size() == choices.size());
        int done = 0;
        for (size_t k = 0; k < t.steps.size(); ++k) {
          const Step& s = t.steps[k];
          done += s.done;
          CHECK(std::isfinite(s.reward));
          if (s.action == kMasked) continue;
          CHECK(s.action == choices[k].first);
          CHECK_FALSE(s.obs.illegal[s.action]);
        }
        CHECK(done == 1);
        CHECK(t.steps.back().done);
      }
    }
  }
}

TEST_CASE("closed loop with inferred teams maps every label to the chosen name") {
  auto data = Data();
  for (const char* format : {"gen1ou", "gen3ou"}) {
    std::vector<testing::RecordedBattle> battles;
    std::vector<engine::Team> teams;
    for (uint64_t seed = 200; seed < 210; ++seed) {
      battles.push_back(testing::RandomBattle(data, format, seed));
      teams.push_back(battles.back().teams[0]);
      teams.push_back(battles.back().teams[1]);
    }
    auto stats = inference::usage_from_teams(teams, format);
    for (const auto& rb : battles) {
      auto res = reconstruct(Doc(rb.events), stats, data);
      REQUIRE_MESSAGE(res.ok(), res.discarded->detail);
      for (const auto& t : res.trajectories) {
        const auto& choices = rb.choices[Index(t.pov)];
        REQUIRE(t.steps.size() == choices.size());
        for (size_t k = 0; k < t.steps.size(); ++k) {
          const Step& s = t.steps[k];
          if (s.action == kMasked) continue;
          const std::string& truth = choices[k].second;
          if (truth == "Struggle") {
            CHECK(s.action == 0);
          } else {
            CHECK(LabelWord(s.obs, s.action) == ToId(truth));
          }
        }
      }
    }
  }
}

TEST_CASE("rewards telescope to the public end state") {
  auto data = Data();
  for (uint64_t seed = 300; seed < 320; ++seed) {
    auto rb = testing::RandomBattle(data, seed % 2 ? "gen1ou" : "gen3ou", seed);
    auto doc = Doc(rb.events);
    auto res = reconstruct(doc, {}, data, KnownTeams(rb));
    REQUIRE(res.ok());
    // Independent scan for last public hp, status and faints per nickname.
    std::array<std::map<std::string, double>, 2> hp;
    std::array<std::map<std::string, bool>, 2> status, fainted;
    std::array<int, 2> size{6, 6};
    int winner = -1;
    for (const auto& e : doc.events) {
      if (auto* s = e.As<protocol::Switch>()) {
        hp[Index(s->pokemon.side)][s->pokemon.name] = s->hp.Fraction();
        status[Index(s->pokemon.side)][s->pokemon.name] = !s->hp.status.empty();
      } else if (auto* d = e.As<protocol::Damage>()) {
        hp[Index(d->target.side)][d->target.name] = d->hp.Fraction();
      } else if (auto* h = e.As<protocol::Heal>()) {
        hp[Index(h->target.side)][h->target.name] = h->hp.Fraction();
      } else if (auto* st = e.As<protocol::SetStatus>()) {
        status[Index(st->target.side)][st->target.name] = true;
      } else if (auto* c = e.As<protocol::CureStatus>()) {
        status[Index(c->target.side)][c->target.name] = false;
      } else if (auto* f = e.As<protocol::Faint>()) {
        fainted[Index(f->target.side)][f->target.name] = true;
        hp[Index(f->target.side)][f->target.name] = 0.0;
      } else if (auto* ts = e.As<protocol::TeamSize>()) {
        size[Index(ts->side)] = ts->size;
      } else if (auto* w = e.As<protocol::Win>()) {
        winner = w->winner == doc.players[0] ? 0 : 1;
      }
    }
    for (const auto& t : res.trajectories) {
      const int me = Index(t.pov), foe = 1 - me;
      auto side_hp = [&](int s) {
        double v = size[s] - static_cast<double>(hp[s].size());
        for (auto& [n, x] : hp[s]) v += x;
        return v;
      };
      auto count = [](const std::map<std::string, bool>& m) {
        int c = 0;
        for (auto& [n, x] : m) c += x;
        return c;
      };
      double expected = (side_hp(me) - side_hp(foe)) +
                        0.5 * (count(status[foe]) - count(status[me])) +
                        (count(fainted[foe]) - count(fainted[me]));
      if (winner >= 0) expected += winner == me ? 100.0 : -100.0;
      double sum = 0.0;
      for (const auto& s : t.steps) sum += s.reward;
      CHECK(std::abs(sum - expected) < 1e-9);
      for (size_t k = 0; k + 1 < t.steps.size(); ++k) CHECK(std::abs(t.steps[k].reward) < 50.0);
    }
  }
}

TEST_CASE("label extraction follows the observation order") {
  auto data = Data();
  auto rb = testing::RandomBattle(data, "gen2ou", 11);
  auto doc = Doc(rb.events);
  engine::Tracker tr(data);
  size_t i = 0;
  while (!doc.events[i].Is<protocol::Turn>()) tr.apply_event(doc.events[i++]);
  tr.apply_event(doc.events[i]);
  engine::PovView view{Side::kP1, &tr, &rb.teams[0]};
  auto moves = view.ActiveMoves();
  REQUIRE(moves.size() >= 2);
  CHECK(extract_action_label(view, ObservedChoice::Move(moves[1])) == 1);
  CHECK(extract_action_label(view, ObservedChoice{}) == kMasked);
  CHECK(extract_action_label(view, ObservedChoice::Switch(view.Bench()[2])) == 6);
  ErrorCode code = ErrorCode::kIo;
  try {
    extract_action_label(view, ObservedChoice::Move("Splash"));
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::kUnmappableChoice);
}

TEST_CASE("full paralysis leaves the label masked; a fill policy supplies one") {
  auto data = Data();
  bool found = false;
  for (uint64_t seed = 400; seed < 500 && !found; ++seed) {
    auto rb = testing::RandomBattle(data, "gen1ou", seed);
    auto doc = Doc(rb.events);
    auto res = reconstruct(doc, {}, data, KnownTeams(rb));
    REQUIRE(res.ok());
    for (const auto& t : res.trajectories) {
      for (size_t k = 0; k < t.steps.size(); ++k) {
        const Step& s = t.steps[k];
        size_t j = s.event_index + 1;
        bool para = false;
        for (; j < doc.events.size(); ++j) {
          const auto& e = doc.events[j];
          if (e.Is<protocol::Turn>() || e.AsRaw("upkeep") || e.IsTerminal()) break;
          auto* c = e.As<protocol::Cant>();
          if (c && c->target.side == t.pov && c->reason == "par") para = true;
          auto* m = e.As<protocol::Move>();
          if (m && m->user.side == t.pov) para = false;
        }
        if (!para) continue;
        found = true;
        CHECK(s.action == kMasked);
        ReconstructOptions o = KnownTeams(rb);
        SeededRng rng(seed);
        o.fill = FillPolicy{"random", [&](const engine::PovView& v, const Observation&) {
                              auto legal = v.LegalActions();
                              return legal[rng.Below(static_cast<int>(legal.size()))];
                            }};
        auto filled = reconstruct(doc, {}, data, o);
        REQUIRE(filled.ok());
        for (const auto& ft : filled.trajectories) {
          CHECK(ft.fill_policy == "random");
          if (ft.pov != t.pov) continue;
          const Step& fs = ft.steps[k];
          CHECK(fs.filled);
          CHECK(fs.action >= 0);
          CHECK_FALSE(fs.obs.illegal[fs.action]);
        }
        break;
      }
      if (found) break;
    }
  }
  CHECK(found);
}

TEST_CASE("a replacement that faints on entry opens another replacement decision") {
  auto data = Data();
  int found = 0;
  for (uint64_t seed = 0; seed < 3000 && found < 3; ++seed) {
    for (const char* format : {"gen2ou", "gen3ou", "gen4ou"}) {
      auto rb = testing::RandomBattle(data, format, seed);
      // A side switching in twice within one window after faints.
      std::array<bool, 2> fainted{false, false};
      std::array<int, 2> replacements{0, 0};
      bool chained = false;
      for (const auto& e : rb.events) {
        if (e.Is<protocol::Turn>()) replacements = {0, 0};
        if (auto* f = e.As<protocol::Faint>()) fainted[Index(f->target.side)] = true;
        if (auto* sw = e.As<protocol::Switch>()) {
          const int s = Index(sw->pokemon.side);
          if (fainted[s] && ++replacements[s] >= 2) chained = true;
          fainted[s] = false;
        }
      }
      if (!chained) continue;
      ++found;
      auto res = reconstruct(Doc(rb.events), {}, data, KnownTeams(rb));
      REQUIRE(res.ok());
      for (const auto& t : res.trajectories) {
        const auto& choices = rb.choices[Index(t.pov)];
        REQUIRE(t.steps.size() == choices.size());
        for (size_t k = 0; k < choices.size(); ++k)
          if (t.steps[k].action != kMasked) CHECK(t.steps[k].action == choices[k].first);
      }
    }
  }
  MESSAGE("chained replacement battles: " << found);
  CHECK(found > 0);
}

TEST_CASE("discard reasons") {
  auto data = Data();
  auto rb = testing::RandomBattle(data, "gen1ou", 21);
  SUBCASE("truncated before the terminal event") {
    std::vector<ProtocolEvent> cut(rb.events.begin(), rb.events.end() - 1);
    while (cut.back().IsTerminal() || cut.back().Is<protocol::Raw>()) cut.pop_back();
    auto doc = protocol::parse_replay(testing::Join(cut), {protocol::Mode::kLenient, false});
    auto res = reconstruct(doc, {}, data, KnownTeams(rb));
    REQUIRE(res.discarded);
    CHECK(res.discarded->reason == ErrorCode::kTruncatedLog);
    CHECK(res.trajectories.empty());
  }
  SUBCASE("unsupported mechanic") {
    auto events = rb.events;
    size_t t = 0;
    while (!events[t].Is<protocol::Turn>()) ++t;
    events.insert(events.begin() + t + 1, protocol::parse_line("|-fieldstart|move: Trick Room"));
    auto res = reconstruct(Doc(events), {}, data, KnownTeams(rb));
    REQUIRE(res.discarded);
    CHECK(res.discarded->reason == ErrorCode::kUnsupportedMechanic);
  }
  SUBCASE("inconsistent event") {
    auto events = rb.events;
    size_t t = 0;
    while (!events[t].Is<protocol::Turn>()) ++t;
    events.insert(events.begin() + t + 1, protocol::parse_line("|faint|p1a: Nobody"));
    auto res = reconstruct(Doc(events), {}, data, KnownTeams(rb));
    REQUIRE(res.discarded);
    CHECK(res.discarded->reason == ErrorCode::kInconsistentEvent);
  }
}

TEST_CASE("observations are deterministic and in range") {
  auto data = Data();
  auto rb = testing::RandomBattle(data, "gen4ou", 31);
  auto doc = Doc(rb.events);
  auto a = reconstruct(doc, {}, data, KnownTeams(rb));
  auto b = reconstruct(doc, {}, data, KnownTeams(rb));
  REQUIRE(a.ok());
  CHECK(a.trajectories == b.trajectories);
  for (const auto& t : a.trajectories)
    for (const auto& s : t.steps) {
      for (const char* n : {"own_active_hp", "opp_active_hp"}) {
        CHECK(s.obs.numeric[NumericOf(n)] >= 0.0);
        CHECK(s.obs.numeric[NumericOf(n)] <= 1.0);
      }
      for (int i = 2; i < 9; ++i) CHECK(std::abs(s.obs.numeric[i]) <= 1.0);
      for (int i = 11; i < 18; ++i) CHECK(std::abs(s.obs.numeric[i]) <= 1.0);
      for (const auto& w : s.obs.words) CHECK_FALSE(w.empty());
    }
}

// Small corpus covering every format, both sources, ratings present and
// absent, a filled label and a 130-step trajectory. Other readers of the
// dataset format compare against the checked-in copy field by field.
std::vector<Trajectory> GoldenCorpus() {
  auto data = Data();
  std::vector<Trajectory> out;
  uint64_t seed = 0;
  for (const char* format : {"gen1ou", "gen2ou", "gen3ou", "gen4ou"}) {
    auto rb = testing::RandomBattle(data, format, ++seed, 2);
    ReconstructOptions o = KnownTeams(rb);
    o.pov = seed % 2 ? PovSelection::kP1 : PovSelection::kBoth;
    if (seed == 2) o.source = "replay";
    o.fill = FillPolicy{"first-legal", [](const engine::PovView& v, const Observation&) {
                          return v.LegalActions().front();
                        }};
    auto res = reconstruct(Doc(rb.events), {}, data, o);
    REQUIRE(res.ok());
    for (auto& t : res.trajectories) {
      if (seed == 3) t.rating = 1623;
      out.push_back(std::move(t));
    }
  }
  for (uint64_t s = 100;; ++s) {
    auto rb = testing::RandomBattle(data, "gen1ou", s);
    auto res = reconstruct(Doc(rb.events), {}, data, KnownTeams(rb));
    REQUIRE(res.ok());
    if (res.trajectories[0].steps.size() != 130) continue;
    out.push_back(res.trajectories[0]);
    break;
  }
  return out;
}

TEST_CASE("golden dataset fixture matches the writer") {
  const std::filesystem::path golden = std::string(BATTLELOG_FIXTURE_DIR) + "/golden_dataset.jsonl";
  const auto corpus = GoldenCorpus();
  if (std::getenv("BATTLELOG_UPDATE_GOLDEN")) write_dataset(corpus, golden);
  auto path = TempFile("golden.jsonl");
  write_dataset(corpus, path);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(path) == slurp(golden));
  CHECK(read_dataset(golden) == corpus);
  std::filesystem::remove(path);
}

TEST_CASE("dataset round trip, version skew and empty file") {
  auto data = Data();
  std::vector<Trajectory> all;
  for (uint64_t seed = 500; all.size() < 100; ++seed) {
    auto rb = testing::RandomBattle(data, seed % 2 ? "gen2ou" : "gen3ou", seed, 3);
    auto res = reconstruct(Doc(rb.events), {}, data, KnownTeams(rb));
    REQUIRE(res.ok());
    for (auto& t : res.trajectories) {
      if (seed % 3 == 0) t.rating = 1500 + static_cast<int>(seed);
      if (seed % 5 == 0) t.source = "replay";
      all.push_back(t);
    }
  }
  all.resize(100);
  auto path = TempFile("dataset.jsonl");
  write_dataset(all, path);
  CHECK(read_dataset(path) == all);
  write_dataset({all[0]}, path, true);
  CHECK(read_dataset(path).size() == 101);

  std::string line = TrajectoryToJson(all[0]);
  auto pos = line.find("\"schema_version\":1");
  REQUIRE(pos != std::string::npos);
  line.replace(pos, 18, "\"schema_version\":2");
  {
    std::ofstream out(path);
    out << line << "\n";
  }
  ErrorCode code = ErrorCode::kIo;
  try {
    read_dataset(path);
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::kSchemaMismatch);

  { std::ofstream out(path, std::ios::trunc); }
  CHECK(read_dataset(path).empty());
  std::filesystem::remove(path);
}

TEST_CASE("vocabulary reserves pad and unknown") {
  Vocabulary v = Vocabulary::Build({"tauros", "bodyslam", "tauros"});
  CHECK(v.Id(kPad) == 0);
  CHECK(v.Id(kUnknown) == 1);
  CHECK(v.size() == 4);
  CHECK(v.Id("missingno") == 1);
  CHECK(v.Word(v.Id("tauros")) == "tauros");
  Vocabulary back = Vocabulary::FromJsonText(v.ToJsonText());
  CHECK(back.Id("bodyslam") == v.Id("bodyslam"));
  CHECK(back.size() == v.size());
}

}  // namespace
}  // namespace battlelog::trajectory
