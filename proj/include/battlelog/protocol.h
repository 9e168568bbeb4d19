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

#ifndef BATTLELOG_PROTOCOL_H_
#define BATTLELOG_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "battlelog/common.h"

// Line-oriented battle log protocol: `|kind|arg|arg...`, one message per line.
namespace battlelog::protocol {

enum class Mode { kStrict, kLenient };

// Version of the message vocabulary below; mirrored in data/protocol_schema.json.
inline constexpr std::string_view kSchemaVersion = "1.0.0";

// "p1a: Name". Only the singles slots p1a and p2a are accepted.
struct PokemonRef {
  Side side = Side::kP1;
  std::string name;
  bool operator==(const PokemonRef&) const = default;
};

// "188/383", "100/100 par", "0 fnt".
struct HpStatus {
  int numerator = 0;
  int denominator = 100;
  bool bare = false;  // written without a denominator ("0 fnt")
  std::string status;
  double Fraction() const { return bare ? 0.0 : static_cast<double>(numerator) / denominator; }
  bool operator==(const HpStatus&) const = default;
};

using Tags = std::vector<std::string>;  // trailing arguments such as "[from] item: Leftovers"

struct Turn {
  int number = 0;
  bool operator==(const Turn&) const = default;
};
struct Move {
  PokemonRef user;
  std::string move;
  std::optional<std::string> target;
  Tags tags;
  bool operator==(const Move&) const = default;
};
struct SwitchIn {
  PokemonRef pokemon;
  std::string details;  // "Tauros", "Tauros, L88", "Tauros, L88, M"
  HpStatus hp;
  Tags tags;
  bool operator==(const SwitchIn&) const = default;
  std::string Species() const;
  int Level() const;
};
struct Switch : SwitchIn {
  bool operator==(const Switch&) const = default;
};
struct Drag : SwitchIn {
  bool operator==(const Drag&) const = default;
};
struct HpChange {
  PokemonRef target;
  HpStatus hp;
  Tags tags;
  bool operator==(const HpChange&) const = default;
};
struct Damage : HpChange {
  bool operator==(const Damage&) const = default;
};
struct Heal : HpChange {
  bool operator==(const Heal&) const = default;
};
struct StatusChange {
  PokemonRef target;
  std::string status;
  Tags tags;
  bool operator==(const StatusChange&) const = default;
};
struct SetStatus : StatusChange {
  bool operator==(const SetStatus&) const = default;
};
struct CureStatus : StatusChange {
  bool operator==(const CureStatus&) const = default;
};
struct BoostChange {
  PokemonRef target;
  std::string stat;
  int amount = 0;
  Tags tags;
  bool operator==(const BoostChange&) const = default;
};
struct Boost : BoostChange {
  bool operator==(const Boost&) const = default;
};
struct Unboost : BoostChange {
  bool operator==(const Unboost&) const = default;
};
struct Faint {
  PokemonRef target;
  Tags tags;
  bool operator==(const Faint&) const = default;
};
struct Weather {
  std::string weather;  // "RainDance", "none", ...
  Tags tags;
  bool operator==(const Weather&) const = default;
};
struct SideCondition {
  Side side = Side::kP1;
  std::string side_label;  // "p1: Alice"
  std::string condition;   // "Spikes", "move: Reflect"
  bool start = true;
  Tags tags;
  bool operator==(const SideCondition&) const = default;
  std::string Name() const;  // condition without a "move: " prefix
};
struct FieldCondition {
  std::string condition;
  bool start = true;
  Tags tags;
  bool operator==(const FieldCondition&) const = default;
};
struct Item {
  PokemonRef target;
  std::string item;
  bool ended = false;  // -enditem
  Tags tags;
  bool operator==(const Item&) const = default;
};
struct Ability {
  PokemonRef target;
  std::string ability;
  Tags tags;
  bool operator==(const Ability&) const = default;
};
struct Cant {
  PokemonRef target;
  std::string reason;
  Tags tags;
  bool operator==(const Cant&) const = default;
};
struct Player {
  Side side = Side::kP1;
  std::vector<std::string> fields;  // name, avatar, rating (any may be absent)
  bool operator==(const Player&) const = default;
  std::string Name() const { return fields.empty() ? std::string() : fields[0]; }
  std::optional<int> Rating() const;
};
struct TeamSize {
  Side side = Side::kP1;
  int size = 6;
  bool operator==(const TeamSize&) const = default;
};
struct Format {
  std::string name;  // "[Gen 1] OU"
  bool operator==(const Format&) const = default;
};
struct Rated {
  Tags tags;
  bool operator==(const Rated&) const = default;
};
struct Win {
  std::string winner;
  bool operator==(const Win&) const = default;
};
struct Tie {
  Tags tags;
  bool operator==(const Tie&) const = default;
};
// Any message without a typed payload, preserved verbatim.
struct Raw {
  std::string kind;
  std::vector<std::string> args;
  bool operator==(const Raw&) const = default;
};

using EventKind = std::variant<Turn, Move, Switch, Drag, Damage, Heal, SetStatus, CureStatus, Boost,
                               Unboost, Faint, Weather, SideCondition, FieldCondition, Item,
                               Ability, Cant, Player, TeamSize, Format, Rated, Win, Tie, Raw>;

struct ProtocolEvent {
  EventKind kind;
  std::string source_line;

  template <typename T>
  const T* As() const { return std::get_if<T>(&kind); }
  template <typename T>
  bool Is() const { return std::holds_alternative<T>(kind); }
  bool IsTerminal() const { return Is<Win>() || Is<Tie>(); }
  const Raw* AsRaw(std::string_view kind_name) const;

  // Structural equality ignores source_line except through Raw payloads.
  bool operator==(const ProtocolEvent& o) const { return kind == o.kind; }
};

ProtocolEvent parse_line(std::string_view line, Mode mode = Mode::kLenient);
std::string serialize_event(const ProtocolEvent& e);
ProtocolEvent MakeEvent(EventKind kind);

std::optional<PokemonRef> ParseRef(std::string_view text);
std::string FormatRef(const PokemonRef& ref);
HpStatus ParseHp(std::string_view text);
std::string FormatHp(const HpStatus& hp);
// Value of a "[from] ..." style tag, e.g. FindTag(tags, "[from]") -> "item: Leftovers".
std::optional<std::string> FindTag(const Tags& tags, std::string_view prefix);

// Message kinds this parser knows. Typed kinds get a payload, the rest parse
// to Raw. Strict mode rejects kinds outside both lists.
std::span<const std::string_view> TypedKinds();
std::span<const std::string_view> RawKinds();
bool KnownKind(std::string_view kind);

struct ReplayDocument {
  std::string format_id;    // "gen1ou"
  std::string format_name;  // "[Gen 1] OU"
  std::array<std::string, 2> players;
  std::optional<int> rating;
  std::optional<int64_t> upload_time;
  std::vector<ProtocolEvent> events;

  bool HasTerminal() const;
};

struct ParseOptions {
  Mode mode = Mode::kLenient;
  bool anonymize = false;
};

ReplayDocument parse_replay(std::string_view raw, const ParseOptions& options = {});
std::string serialize_replay(const ReplayDocument& doc);
// Stable pseudonym for a player name.
std::string Pseudonym(std::string_view name);

}  // namespace battlelog::protocol

#endif  // BATTLELOG_PROTOCOL_H_
