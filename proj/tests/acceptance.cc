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


// End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
// and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "battlelog/agents.h"
#include "battlelog/evalharness.h"
#include "battlelog/inference.h"
#include "battlelog/observation.h"
#include "battlelog/protocol.h"
#include "battlelog/rlmath.h"
#include "battlelog/trajectory.h"
#include "test_util.h"

namespace battlelog {
namespace {

using protocol::ProtocolEvent;
using trajectory::kMasked;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int failures = 0;

void Report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Format(const char* fmt, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

int Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

const std::vector<std::string> kFormats = {"gen1ou", "gen2ou", "gen3ou", "gen4ou"};

// ----------------------------------------------------------- battle corpus

struct Battle {
  std::string format;
  uint64_t seed = 0;
  std::vector<ProtocolEvent> events;
  std::array<engine::Team, 2> teams;
  std::array<std::vector<std::pair<int, std::string>>, 2> choices;
};

Battle PlayRecorded(std::shared_ptr<const data::GameData> data, const agents::Agent& a,
                    const agents::Agent& b, const eval::TeamSet& set, uint64_t seed) {
  Battle out;
  out.format = set.format_id;
  out.seed = seed;
  SeededRng pick(HashCombine(seed, 0x7ea5));
  const int n = static_cast<int>(set.teams.size());
  engine::BattleConfig cfg;
  cfg.format_id = set.format_id;
  cfg.names = {a.name() + "-1", b.name() + "-2"};
  cfg.teams = {set.teams[pick.Below(n)], set.teams[pick.Below(n)]};
  cfg.seed = seed;
  out.teams = cfg.teams;
  engine::BattleState st = engine::NewBattle(data, cfg, &out.events);
  engine::Tracker tr(data);
  for (const auto& e : out.events) tr.apply_event(e);
  const std::array<const agents::Agent*, 2> players{&a, &b};
  std::array<SeededRng, 2> rngs{SeededRng(HashCombine(seed, 1)), SeededRng(HashCombine(seed, 2))};
  while (!st.outcome.Over()) {
    std::array<int, 2> choice{0, 0};
    for (Side s : {Side::kP1, Side::kP2}) {
      if (!engine::NeedsChoice(st, s)) continue;
      engine::PovView view{s, &tr, &cfg.teams[Index(s)]};
      const int act = players[Index(s)]->choose_action(view, engine::legal_actions(st, s), rngs[Index(s)]);
      choice[Index(s)] = act;
      std::string name;
      if (auto m = engine::MoveForAction(st, s, act)) name = *m;
      else if (auto t = engine::SwitchTarget(st, s, act)) name = st.SideOf(s).team[*t].spec.species;
      out.choices[Index(s)].push_back({act, name});
    }
    engine::StepResult r = engine::step(st, choice[0], choice[1]);
    for (const auto& e : r.events) tr.apply_event(e);
    out.events.insert(out.events.end(), r.events.begin(), r.events.end());
  }
  return out;
}

std::vector<Battle> MakeCorpus(std::shared_ptr<const data::GameData> data,
                               const inference::UsageStats& stats, int count) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"random", "grunt"},          {"gymleader", "simpleheuristics"}, {"emeraldkaizo", "gen1bossai"},
      {"grunt", "gymleader"},       {"simpleheuristics", "random"},    {"gen1bossai", "emeraldkaizo"},
      {"random", "random"},         {"gymleader", "emeraldkaizo"}};
  std::map<std::string, std::unique_ptr<agents::Agent>> agents_by_name;
  for (const auto& n : agents::AgentNames()) agents_by_name[n] = agents::MakeAgent(n);
  std::map<std::string, eval::TeamSet> sets;
  for (const auto& f : kFormats) sets[f] = eval::generate_variety_teams(*data, stats, f, 200, 77);
  std::vector<Battle> corpus(count);
  ParallelFor(count, Workers(), [&](int k) {
    const auto& [a, b] = pairs[k % pairs.size()];
    corpus[k] = PlayRecorded(data, *agents_by_name.at(a), *agents_by_name.at(b),
                             sets.at(kFormats[k % kFormats.size()]), 1000 + k);
  });
  return corpus;
}

// ---------------------------------------------------------- parser round trip

void ParserRoundTrip(const std::vector<Battle>& corpus) {
  std::vector<std::string> lines;
  for (const auto& b : corpus) {
    for (const auto& e : b.events) lines.push_back(protocol::serialize_event(e));
    if (lines.size() >= 12000) break;
  }
  std::ifstream in(std::string(BATTLELOG_FIXTURE_DIR) + "/historical_gen1ou.log");
  std::string line;
  size_t historical = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    lines.push_back(line);
    ++historical;
  }
  size_t mismatches = 0;
  const auto start = Clock::now();
  for (const auto& l : lines) {
    try {
      if (protocol::serialize_event(protocol::parse_line(l)) != l) ++mismatches;
    } catch (const Error&) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  Report("parser round trip", mismatches == 0 && historical > 0 && lines.size() >= 10000 && secs < 1.0,
         std::to_string(lines.size()) + " lines (" + std::to_string(historical) + " historical), " +
             std::to_string(mismatches) + " mismatches, " + Format("%.3fs", secs));
}

// --------------------------------------------- reconstruction-based criteria

int SlotOf(std::string_view name) {
  const auto& names = trajectory::TokenSlotNames();
  for (int i = 0; i < trajectory::kNumTokens; ++i)
    if (names[i] == name) return i;
  return -1;
}

std::string LabelWord(const trajectory::Observation& obs, int action) {
  if (action < engine::kFirstSwitch) return obs.words[SlotOf("own_move_" + std::to_string(action))];
  return obs.words[SlotOf("own_bench_" + std::to_string(action - engine::kFirstSwitch) + "_species")];
}

struct Tally {
  size_t battles = 0, discards = 0;
  size_t labels = 0, label_mismatch = 0;
  size_t reveals = 0, reveal_mismatch = 0;
  size_t hygiene_checks = 0, hygiene_violations = 0;
  size_t reward_checks = 0, reward_violations = 0;
  std::vector<std::string> notes;

  void Merge(const Tally& o) {
    battles += o.battles;
    discards += o.discards;
    labels += o.labels;
    label_mismatch += o.label_mismatch;
    reveals += o.reveals;
    reveal_mismatch += o.reveal_mismatch;
    hygiene_checks += o.hygiene_checks;
    hygiene_violations += o.hygiene_violations;
    reward_checks += o.reward_checks;
    reward_violations += o.reward_violations;
    if (notes.size() < 8) notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }
};

bool SameSpecies(const std::string& a, const std::string& b) { return ToId(a) == ToId(b); }

// Every attribute the log disclosed must equal the true team and survive
// unchanged into the reconstructed team.
void CheckReveals(const protocol::ReplayDocument& doc, const Battle& b,
                  const trajectory::ReconstructResult& res, Tally& t) {
  for (int s = 0; s < 2; ++s) {
    inference::PartialTeam partial;
    partial.side = s == 0 ? Side::kP1 : Side::kP2;
    int turn = 0;
    for (size_t i = 0; i < doc.events.size(); ++i) {
      if (auto* tu = doc.events[i].As<protocol::Turn>()) turn = tu->number;
      inference::update_from_event(partial, doc.events[i], turn, i);
    }
    auto find = [](const engine::Team& team, const std::string& species) -> const engine::PokemonSpec* {
      for (const auto& p : team)
        if (SameSpecies(p.species, species)) return &p;
      return nullptr;
    };
    for (const auto& slot : partial.slots) {
      if (!slot.species.Known()) continue;
      const engine::PokemonSpec* truth = find(b.teams[s], *slot.species.value);
      const engine::PokemonSpec* rebuilt = find(res.teams[s], *slot.species.value);
      ++t.reveals;
      if (!truth || !rebuilt) {
        ++t.reveal_mismatch;
        continue;
      }
      if (slot.level.Known()) {
        ++t.reveals;
        if (*slot.level.value != truth->level || rebuilt->level != truth->level) ++t.reveal_mismatch;
      }
      for (const auto& m : slot.moves) {
        if (!m.Known()) continue;
        ++t.reveals;
        auto has = [&](const engine::PokemonSpec& p) {
          return std::any_of(p.moves.begin(), p.moves.end(),
                             [&](const std::string& x) { return ToId(x) == ToId(*m.value); });
        };
        if (ToId(*m.value) != "struggle" && (!has(*truth) || !has(*rebuilt))) ++t.reveal_mismatch;
      }
      if (slot.item.Known()) {
        ++t.reveals;
        if (ToId(*slot.item.value) != ToId(truth->item) || ToId(rebuilt->item) != ToId(truth->item))
          ++t.reveal_mismatch;
      }
      if (slot.ability.Known()) {
        ++t.reveals;
        if (ToId(*slot.ability.value) != ToId(truth->ability) ||
            ToId(rebuilt->ability) != ToId(truth->ability))
          ++t.reveal_mismatch;
      }
    }
  }
}

// No observation may name an opponent species, item or ability before the
// log disclosed it.
// `own_team` is the team the trajectory was built from. In the inferred case
// its unrevealed members are usage guesses, which may coincide with hidden
// opponent species without anything leaking.
void CheckHygiene(const protocol::ReplayDocument& doc, const Battle& b, const engine::Team& own_team,
                  const trajectory::Trajectory& traj, Tally& t) {
  const int me = Index(traj.pov), foe = 1 - me;
  inference::PartialTeam partial;
  partial.side = foe == 0 ? Side::kP1 : Side::kP2;
  size_t next = 0;
  int turn = 0;
  std::set<std::string> own;
  for (const auto& p : own_team) own.insert(ToId(p.species));
  const int item_slot = SlotOf("opp_active_item");
  const int ability_slot = SlotOf("opp_active_ability");
  const int species_slot = SlotOf("opp_active_species");
  for (const auto& st : traj.steps) {
    // Turn decisions are observed after their turn event.
    size_t visible = st.event_index;
    if (visible < doc.events.size() && doc.events[visible].Is<protocol::Turn>()) ++visible;
    while (next < visible) {
      if (auto* tu = doc.events[next].As<protocol::Turn>()) turn = tu->number;
      inference::update_from_event(partial, doc.events[next], turn, next);
      ++next;
    }
    std::set<std::string> revealed_species;
    for (const auto& slot : partial.slots)
      if (slot.species.Known()) revealed_species.insert(ToId(*slot.species.value));
    for (const auto& p : b.teams[foe]) {
      const std::string id = ToId(p.species);
      if (revealed_species.count(id) || own.count(id)) continue;
      ++t.hygiene_checks;
      for (size_t wi = 0; wi < st.obs.words.size(); ++wi)
        if (const auto& w = st.obs.words[wi]; w == id) {
          ++t.hygiene_violations;
          if (t.notes.size() < 5)
            t.notes.push_back("unrevealed species " + id + " slot " + std::string(trajectory::TokenSlotNames()[wi]) + " at event " + std::to_string(st.event_index) +
                              " turn " + std::to_string(st.turn) + " pov " + std::to_string(me) +
                              " battle " + b.format + "/" + std::to_string(b.seed));
        }
    }
    // The opponent's active item and ability must be "unrevealed" or pad
    // unless the log has named them.
    const std::string& active = st.obs.words[species_slot];
    const inference::PartialPokemon* slot = nullptr;
    for (const auto& s : partial.slots)
      if (s.species.Known() && ToId(*s.species.value) == active) slot = &s;
    for (auto [index, known] : {std::pair{item_slot, slot && (slot->item.Known() || slot->item_removed)},
                                std::pair{ability_slot, slot && slot->ability.Known()}}) {
      const std::string& w = st.obs.words[index];
      if (w == "unrevealed" || w == trajectory::kPad) continue;
      ++t.hygiene_checks;
      if (!known) {
        ++t.hygiene_violations;
        if (t.notes.size() < 5) t.notes.push_back("early reveal of " + w);
      }
    }
  }
}

// Sum of rewards equals the public end-state shaping differential plus the
// win term, and the win term only appears on the terminal step.
void CheckRewards(const protocol::ReplayDocument& doc, const trajectory::Trajectory& traj, Tally& t) {
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
  const int me = Index(traj.pov), foe = 1 - me;
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
  const double shaping = (side_hp(me) - side_hp(foe)) + 0.5 * (count(status[foe]) - count(status[me])) +
                         (count(fainted[foe]) - count(fainted[me]));
  const double win = winner < 0 ? 0.0 : (winner == me ? 100.0 : -100.0);
  double sum = 0.0;
  for (const auto& s : traj.steps) sum += s.reward;
  ++t.reward_checks;
  bool ok = std::abs(sum - (shaping + win)) < 1e-9;
  // Shaping alone can never move a step by 50, so any such step carries the win term.
  for (size_t k = 0; k + 1 < traj.steps.size(); ++k) ok &= std::abs(traj.steps[k].reward) < 50.0;
  if (win != 0.0) ok &= std::abs(traj.steps.back().reward) >= 50.0;
  if (!ok) {
    ++t.reward_violations;
    if (t.notes.size() < 5) t.notes.push_back(Format("reward sum %.12f vs %.12f", sum, shaping + win));
  }
}

void ReconstructionCriteria(std::shared_ptr<const data::GameData> data, const inference::UsageStats& stats,
                            const std::vector<Battle>& corpus) {
  std::vector<Tally> per(corpus.size());
  const auto start = Clock::now();
  ParallelFor(static_cast<int>(corpus.size()), Workers(), [&](int k) {
    const Battle& b = corpus[k];
    Tally& t = per[k];
    t.battles = 1;
    const protocol::ReplayDocument doc =
        protocol::parse_replay(testing::Join(b.events), {protocol::Mode::kStrict, false});

    // Ground-truth teams: labels must equal the chosen indices exactly.
    trajectory::ReconstructOptions known;
    known.source = "selfplay";
    known.known_teams = {b.teams[0], b.teams[1]};
    const auto exact = trajectory::reconstruct(doc, {}, data, known);
    // Inferred teams: the replay path, labels compared by what they name.
    const auto inferred = trajectory::reconstruct(doc, stats, data);
    for (const auto* res : {&exact, &inferred}) {
      if (!res->ok()) {
        ++t.discards;
        t.notes.push_back(std::string(ErrorCodeName(res->discarded->reason)) + ": " + res->discarded->detail);
        return;
      }
    }
    for (const auto* res : {&exact, &inferred}) {
      for (const auto& traj : res->trajectories) {
        const auto& choices = b.choices[Index(traj.pov)];
        if (traj.steps.size() != choices.size()) {
          ++t.label_mismatch;
          t.notes.push_back("step count " + std::to_string(traj.steps.size()) + " vs " +
                            std::to_string(choices.size()) + " decisions, battle " + b.format + "/" +
                            std::to_string(b.seed) + " pov " + std::to_string(Index(traj.pov)) +
                            (res == &exact ? " exact" : " inferred"));
          continue;
        }
        for (size_t i = 0; i < traj.steps.size(); ++i) {
          const auto& st = traj.steps[i];
          if (st.action == kMasked) continue;
          ++t.labels;
          bool ok;
          if (res == &exact) ok = st.action == choices[i].first;
          else if (choices[i].second == "Struggle") ok = st.action == 0;
          else ok = LabelWord(st.obs, st.action) == ToId(choices[i].second);
          if (!ok) {
            ++t.label_mismatch;
            t.notes.push_back("label " + std::to_string(st.action) + " vs " + std::to_string(choices[i].first) +
                              " " + choices[i].second + (res == &exact ? " exact" : " inferred") + " battle " +
                              std::to_string(b.seed) + " event " + std::to_string(st.event_index));
          }
        }
      }
    }
    CheckReveals(doc, b, inferred, t);
    for (const auto* res : {&exact, &inferred})
      for (const auto& traj : res->trajectories) {
        CheckHygiene(doc, b, res->teams[Index(traj.pov)], traj, t);
        CheckRewards(doc, traj, t);
      }
  });
  const double secs = Seconds(start);
  Tally total;
  for (const auto& t : per) total.Merge(t);
  auto notes = [&] {
    std::string s;
    for (const auto& n : total.notes) s += "; " + n;
    return s;
  };
  Report("closed-loop reconstruction",
         total.discards == 0 && total.label_mismatch == 0 && total.reveal_mismatch == 0 && secs < 120.0,
         std::to_string(total.battles) + " battles x 2 povs x {known, inferred} teams, " +
             std::to_string(total.discards) + " discards, " + std::to_string(total.label_mismatch) + "/" +
             std::to_string(total.labels) + " label mismatches, " + std::to_string(total.reveal_mismatch) +
             "/" + std::to_string(total.reveals) + " revealed-attribute mismatches, " +
             Format("%.1fs on %.0f workers", secs, Workers()) + notes());
  Report("pov hygiene", total.hygiene_violations == 0 && total.hygiene_checks > 0,
         std::to_string(total.hygiene_violations) + " violations in " + std::to_string(total.hygiene_checks) +
             " checks");
  Report("reward accounting", total.reward_violations == 0 && total.reward_checks > 0,
         std::to_string(total.reward_checks) + " trajectories, " + std::to_string(total.reward_violations) +
             " off by more than 1e-9 or with a non-terminal win term");
}

// ------------------------------------------------------ heuristic ordering

void HeuristicOrdering(std::shared_ptr<const data::GameData> data, const inference::UsageStats& stats) {
  const auto start = Clock::now();
  const eval::TeamSet set = eval::generate_variety_teams(*data, stats, "gen3ou", 1000, 1);
  auto gym = agents::MakeAgent("gymleader");
  auto grunt = agents::MakeAgent("grunt");
  auto random = agents::MakeAgent("random");
  eval::ArenaOptions opts;
  opts.workers = Workers();
  constexpr double kZ = 1.959963984540054;  // two-sided 95%
  const eval::PairScore top = eval::play_pair(*gym, *grunt, set, data, 500, 1, opts);
  const eval::PairScore low = eval::play_pair(*grunt, *random, set, data, 500, 2, opts);
  const double top_lb = eval::WilsonLowerBound(top.score, top.games, kZ);
  const double low_lb = eval::WilsonLowerBound(low.score, low.games, kZ);
  Report("heuristic ordering",
         top.games == 500 && low.games == 500 && top_lb > 0.5 && low_lb > 0.5,
         Format("gen3ou variety set, n=500: GymLeader vs Grunt %.3f (95%% lower bound %.3f), ", top.Rate(),
                top_lb) +
             Format("Grunt vs RandomBaseline %.3f (95%% lower bound %.3f), %.1fs", low.Rate(), low_lb,
                    Seconds(start)));
}

// ------------------------------------------------------------- rating math

void RatingMath() {
  eval::RatingState s{1500, 200, 0};
  const eval::RatingState out = eval::glicko1_update(s, {{1400, 30, 1}, {1550, 100, 0}, {1700, 300, 0}}, {}, 0);
  const bool example = std::abs(out.rating - 1464.1) < 0.1 && std::abs(out.rd - 151.4) < 0.1;
  const auto g = eval::gxe({1500, 60, 0});
  const bool gxe_mid = g && *g == 50.00;
  bool rd_down = true;
  eval::RatingState r{1500, 350, 0};
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> opp(1200, 1800);
  for (int period = 0; period < 50; ++period) {
    const double before = r.rd;
    r = eval::glicko1_update(r, {{opp(gen), 50, 1}, {opp(gen), 80, 0}}, {}, 0);
    rd_down &= r.rd < before || r.rd == eval::GlickoConfig{}.min_rd;
  }
  Report("rating math", example && gxe_mid && rd_down,
         Format("worked example -> %.2f / %.2f, gxe(1500) = %.2f, ", out.rating, out.rd, g ? *g : -1) +
             (rd_down ? "RD decreases after every rated period" : "RD failed to decrease"));
}

// ----------------------------------------------------------------- RL math

void RlMath() {
  using namespace rlmath;
  size_t grid_bad = 0;
  for (const WeightConfig& c : {WeightConfig::IL(), WeightConfig::Exp(), WeightConfig::ExpExtreme(),
                                WeightConfig::Binary(), WeightConfig::BinaryMaxQ()}) {
    for (int i = 0; i < 1000; ++i) {
      const double a = -60.0 + 120.0 * i / 999.0;
      const double w = actor_weight(c, a);
      switch (c.kind) {
        case WeightKind::kIL: grid_bad += w != 1.0; break;
        case WeightKind::kExp:
          grid_bad += std::abs(w - std::min(std::max(std::exp(c.beta * a), c.clip_lo), c.clip_hi)) > 1e-9;
          break;
        default: grid_bad += w != (a > 0 ? 1.0 : 0.0);
      }
    }
  }
  const ValueBins bins;
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> v(bins.lo, bins.hi);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = v(gen);
    worst = std::max(worst, std::abs(two_hot_decode(two_hot_encode(x, bins), bins) - x));
  }
  bool il_free = true;
  std::uniform_real_distribution<double> any(-1e3, 1e3), logp(-30, 0);
  for (int i = 0; i < 1000; ++i) {
    const double lp = logp(gen);
    const auto a = actor_loss_terms(WeightConfig::IL(), lp, any(gen), any(gen));
    const auto b = actor_loss_terms(WeightConfig::IL(), lp, any(gen), any(gen));
    il_free &= a.bc == b.bc && a.maxq == 0.0 && b.maxq == 0.0;
  }
  Report("rl math", grid_bad == 0 && worst <= 1e-6 && il_free,
         std::to_string(grid_bad) + " grid mismatches over 5 configs x 1000 points, two-hot worst error " +
             Format("%.2e", worst) + " over 10000 draws, imitation loss " +
             (il_free ? "independent of Q and A" : "DEPENDS on the critic"));
}

// ---------------------------------------------------------- variety teams

void VarietyGeneration(std::shared_ptr<const data::GameData> data, const inference::UsageStats& stats) {
  std::string detail;
  bool pass = true;
  for (const auto& f : kFormats) {
    const eval::TeamSet a = eval::generate_variety_teams(*data, stats, f, 1000, 5);
    const eval::TeamSet b = eval::generate_variety_teams(*data, stats, f, 1000, 5);
    const data::FormatData& fmt = data->Format(f);
    int illegal = 0;
    std::map<std::string, int> count;
    for (const auto& t : a.teams) {
      try {
        engine::ValidateTeam(*data, fmt, t);
      } catch (const Error&) {
        ++illegal;
      }
      for (const auto& p : t) ++count[p.species];
    }
    const double cap = eval::VarietyOptions{}.concentration_cap * 1000.0 * 6 / fmt.pool.size();
    int worst = 0;
    for (const auto& [s, n] : count) worst = std::max(worst, n);
    const bool ok = a.teams.size() == 1000 && illegal == 0 && worst <= cap && a.teams == b.teams;
    pass &= ok;
    detail += (detail.empty() ? "" : ", ") + f + Format(": %.0f illegal, max species count %.0f <= cap %.1f", illegal,
                                                        worst, cap) +
              (a.teams == b.teams ? "" : " NOT deterministic");
  }
  Report("variety generation", pass, detail);
}

}  // namespace
}  // namespace battlelog

int main() {
  using namespace battlelog;
  auto data = data::GameData::Default();
  const auto stats = inference::UsageStats::LoadDirectory(data::GameData::DefaultDir() / "usage");
  const auto corpus = MakeCorpus(data, stats, 500);
  ParserRoundTrip(corpus);
  ReconstructionCriteria(data, stats, corpus);
  HeuristicOrdering(data, stats);
  RatingMath();
  RlMath();
  VarietyGeneration(data, stats);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
