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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "battlelog/evalharness.h"

namespace battlelog::eval {
namespace {

template <typename T>
void Shuffle(std::vector<T>& v, SeededRng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[rng.Below(i + 1)]);
}

double Freq(const inference::Frequencies* table, const std::string& key) {
  if (!table) return 0.0;
  auto it = table->find(key);
  return it == table->end() ? 0.0 : it->second;
}

// Weighted draw of up to k distinct candidates.
std::vector<std::string> DrawTempered(const std::vector<std::string>& candidates,
                                      const inference::Frequencies* table, int k,
                                      const VarietyOptions& o, SeededRng& rng) {
  std::vector<std::string> pool = candidates;
  std::vector<double> w;
  for (const auto& c : pool) w.push_back(std::pow(Freq(table, c) + o.frequency_floor, 1.0 / o.temperature));
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < k && !pool.empty()) {
    double total = 0.0;
    for (double x : w) total += x;
    double r = rng.Uniform() * total;
    size_t pick = pool.size() - 1;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (r < w[i]) {
        pick = i;
        break;
      }
      r -= w[i];
    }
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
    w.erase(w.begin() + pick);
  }
  return out;
}

std::string Trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool StartsWith(const std::string& s, std::string_view p) { return s.rfind(p, 0) == 0; }

}  // namespace

std::string_view TeamSetKindName(TeamSetKind kind) {
  switch (kind) {
    case TeamSetKind::kVariety:
      return "variety";
    case TeamSetKind::kCompetitive:
      return "competitive";
    case TeamSetKind::kReplayDerived:
      return "replay-derived";
  }
  return "?";
}

TeamSet generate_variety_teams(const data::GameData& data, const inference::UsageStats& stats,
                               const std::string& format_id, int n, uint64_t seed,
                               const VarietyOptions& options) {
  const data::FormatData& format = data.Format(format_id);
  if (format.pool.size() < 6)
    Fail(ErrorCode::kInvalidArgument, format_id + " pool has fewer than six species");
  if (n < 0) Fail(ErrorCode::kInvalidArgument, "negative team count");
  if (!(options.temperature > 0)) Fail(ErrorCode::kInvalidArgument, "temperature must be positive");
  const inference::FormatUsage* usage = stats.Find(format_id);
  SeededRng rng(seed);
  TeamSet set;
  set.kind = TeamSetKind::kVariety;
  set.format_id = format_id;
  set.seed = seed;

  std::vector<std::string> stream;
  size_t pos = 0;
  std::vector<std::string> carry;  // skipped as duplicates; served first next time
  std::vector<std::string> items = data.ItemsForGen(format.gen);
  for (int t = 0; t < n; ++t) {
    std::vector<std::string> species;
    std::vector<std::string> skipped;
    auto offer = [&](const std::string& s) {
      if (std::find(species.begin(), species.end(), s) == species.end()) species.push_back(s);
      else skipped.push_back(s);
    };
    while (!carry.empty() && species.size() < 6) {
      offer(carry.front());
      carry.erase(carry.begin());
    }
    while (species.size() < 6) {
      if (pos == stream.size()) {
        stream = format.pool;
        Shuffle(stream, rng);
        pos = 0;
      }
      offer(stream[pos++]);
    }
    carry.insert(carry.end(), skipped.begin(), skipped.end());

    engine::Team team;
    for (const auto& name : species) {
      const data::SpeciesData& sp = data.Species(name);
      const inference::SpeciesUsage* su = nullptr;
      if (usage) {
        auto it = usage->pokemon.find(sp.name);
        if (it != usage->pokemon.end()) su = &it->second;
      }
      std::vector<std::string> legal;
      for (const auto& m : sp.movepool)
        if (data.MoveLegal(sp, m, format.gen)) legal.push_back(m);
      engine::PokemonSpec spec;
      spec.species = sp.name;
      spec.moves = DrawTempered(legal, su ? &su->moves : nullptr, 4, options, rng);
      if (!items.empty()) {
        std::vector<std::string> cands = items;
        cands.push_back("nothing");
        std::string item = DrawTempered(cands, su ? &su->items : nullptr, 1, options, rng).front();
        spec.item = item == "nothing" ? "" : item;
      }
      if (format.gen >= 3)
        spec.ability = DrawTempered(sp.abilities, su ? &su->abilities : nullptr, 1, options, rng).front();
      team.push_back(std::move(spec));
    }
    engine::ValidateTeam(data, format, team);
    set.teams.push_back(std::move(team));
    set.names.push_back("variety-" + std::to_string(t + 1));
  }
  return set;
}

std::string ExportTeams(const TeamSet& set) {
  std::ostringstream out;
  for (size_t t = 0; t < set.teams.size(); ++t) {
    std::string name = t < set.names.size() && !set.names[t].empty() ? set.names[t]
                                                                      : "team-" + std::to_string(t + 1);
    out << "=== [" << set.format_id << "] " << name << " ===\n\n";
    for (const auto& p : set.teams[t]) {
      out << p.species;
      if (!p.item.empty()) out << " @ " << p.item;
      out << "\n";
      if (!p.ability.empty()) out << "Ability: " << p.ability << "\n";
      if (p.level != 100) out << "Level: " << p.level << "\n";
      for (const auto& m : p.moves) out << "- " << m << "\n";
      out << "\n";
    }
  }
  return out.str();
}

TeamSet ImportTeams(const data::GameData& data, const std::string& text) {
  static const std::regex kHeader(R"(^===\s*\[([^\]]+)\]\s*(.*?)\s*===$)");
  static const std::regex kNicknamed(R"(^(.*)\(([^()]+)\)$)");
  TeamSet set;
  set.kind = TeamSetKind::kCompetitive;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  engine::PokemonSpec* current = nullptr;
  auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw);
    std::smatch m;
    if (line.empty()) {
      current = nullptr;
      continue;
    }
    if (std::regex_match(line, m, kHeader)) {
      const std::string format = ToId(m[1].str());
      if (set.format_id.empty()) set.format_id = format;
      else if (set.format_id != format)
        Fail(ErrorCode::kInvalidArgument, where() + "mixed formats " + set.format_id + " and " + format);
      set.teams.emplace_back();
      set.names.push_back(m[2].str());
      current = nullptr;
      continue;
    }
    if (set.teams.empty()) Fail(ErrorCode::kMalformedField, where() + "team text must start with a === [format] name === line");
    if (!current) {
      std::string head = line, item;
      if (size_t at = line.find(" @ "); at != std::string::npos) {
        head = Trim(line.substr(0, at));
        item = Trim(line.substr(at + 3));
      }
      for (const char* g : {" (M)", " (F)"})
        if (head.size() > 4 && head.substr(head.size() - 4) == g) head = Trim(head.substr(0, head.size() - 4));
      if (std::regex_match(head, m, kNicknamed)) head = Trim(m[2].str());
      set.teams.back().push_back(engine::PokemonSpec{head, 100, {}, item, ""});
      current = &set.teams.back().back();
      continue;
    }
    if (StartsWith(line, "- ")) {
      current->moves.push_back(Trim(line.substr(2)));
    } else if (StartsWith(line, "Ability:")) {
      current->ability = Trim(line.substr(8));
    } else if (StartsWith(line, "Level:")) {
      try {
        current->level = std::stoi(Trim(line.substr(6)));
      } catch (const std::exception&) {
        Fail(ErrorCode::kMalformedField, where() + "bad level");
      }
    } else if (StartsWith(line, "EVs:") || StartsWith(line, "IVs:") || StartsWith(line, "Shiny:") ||
               StartsWith(line, "Happiness:") || line.find(" Nature") != std::string::npos) {
      // Fixed spreads are used everywhere; these lines carry nothing we model.
    } else {
      Fail(ErrorCode::kMalformedField, where() + "unrecognised team line '" + line + "'");
    }
  }
  if (set.teams.empty()) return set;
  const data::FormatData& format = data.Format(set.format_id);
  for (size_t t = 0; t < set.teams.size(); ++t) {
    const std::string label = "team " + std::to_string(t + 1) + " '" + set.names[t] + "'";
    const engine::Team& team = set.teams[t];
    std::set<std::string> seen;
    for (size_t k = 0; k < team.size(); ++k) {
      const std::string slot = label + " slot " + std::to_string(k + 1) + " (" + team[k].species + ")";
      if (!seen.insert(ToId(team[k].species)).second)
        Fail(ErrorCode::kIllegalTeam, slot + ": duplicate species");
      try {
        engine::ValidateTeam(data, format, engine::Team{team[k]});
      } catch (const Error& e) {
        Fail(ErrorCode::kIllegalTeam, slot + ": " + e.what());
      }
    }
    try {
      engine::ValidateTeam(data, format, team);
    } catch (const Error& e) {
      Fail(ErrorCode::kIllegalTeam, label + ": " + e.what());
    }
  }
  return set;
}

TeamSet load_competitive_teams(const data::GameData& data, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ImportTeams(data, ss.str());
}

TeamSet replay_team_set(const std::vector<protocol::ReplayDocument>& docs,
                        const inference::UsageStats& stats,
                        std::shared_ptr<const data::GameData> data, int rating_floor) {
  TeamSet set;
  set.kind = TeamSetKind::kReplayDerived;
  for (const auto& doc : docs) {
    if (!doc.rating || *doc.rating < rating_floor) continue;
    if (set.format_id.empty()) set.format_id = doc.format_id;
    if (doc.format_id != set.format_id) continue;
    trajectory::ReconstructResult r = trajectory::reconstruct(doc, stats, data);
    if (!r.ok()) continue;
    for (int s = 0; s < 2; ++s) {
      set.teams.push_back(r.teams[s]);
      set.names.push_back(doc.players[s]);
    }
  }
  return set;
}

}  // namespace battlelog::eval
