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

#include "battlelog/protocol.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace battlelog::protocol {
namespace {

constexpr std::string_view kTyped[] = {
    "turn",       "move",        "switch",   "drag",     "-damage",    "-heal",     "-status",
    "-curestatus", "-boost",     "-unboost", "faint",    "-weather",   "-sidestart", "-sideend",
    "-fieldstart", "-fieldend",  "-item",    "-enditem", "-ability",   "cant",      "player",
    "teamsize",   "tier",        "rated",    "win",      "tie",
};

constexpr std::string_view kRaw[] = {
    "",           "j",            "J",           "l",           "L",          "n",
    "N",          "c",            "c:",          "chat",        "chatmsg",    "chatmsg-raw",
    "t:",         "raw",          "html",        "uhtml",       "uhtmlchange", "inactive",
    "inactiveoff", "gametype",    "gen",         "rule",        "title",      "start",
    "upkeep",     "clearpoke",    "poke",        "teampreview", "message",    "-message",
    "-hint",      "-crit",        "-supereffective", "-resisted", "-immune",  "-miss",
    "-fail",      "-notarget",    "-start",      "-end",        "-activate",  "-singleturn",
    "-singlemove", "-clearallboost", "-clearboost", "-setboost", "-hitcount",  "-ohko",
    "-cureteam",  "-sethp",       "-center",     "-nothing",    "-waiting",   "-block",
    "-fieldactivate", "-transform", "detailschange", "replace", "-formechange", "swap",
    "-swapboost", "-copyboost",   "-invertboost", "-mustrecharge", "-prepare",
    "-clearnegativeboost", "-clearpositiveboost", "-endability", "-anim", "done", "error",
    "request",    "bigerror",     "debug",       "seed",        "badge",      "unlink",
    "timer",      "split",        "updatepoke",  "askreg",      "name",       "noinit",
    "deinit",     "init",         "upkeepend",
};

[[noreturn]] void Malformed(std::string_view line, std::string_view why) {
  Fail(ErrorCode::kMalformedField, std::string(why) + " in line: " + std::string(line));
}

std::vector<std::string> Split(std::string_view body) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t bar = body.find('|', start);
    if (bar == std::string_view::npos) {
      out.emplace_back(body.substr(start));
      break;
    }
    out.emplace_back(body.substr(start, bar - start));
    start = bar + 1;
  }
  return out;
}

bool ParseInt(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

Tags TailFrom(const std::vector<std::string>& args, size_t from) {
  if (from >= args.size()) return {};
  return Tags(args.begin() + static_cast<std::ptrdiff_t>(from), args.end());
}

bool ParseSideId(std::string_view text, Side& side) {
  if (text == "p1") side = Side::kP1;
  else if (text == "p2") side = Side::kP2;
  else return false;
  return true;
}

bool ValidStatus(std::string_view s) {
  return s == "par" || s == "slp" || s == "frz" || s == "brn" || s == "psn" || s == "tox" ||
         s == "fnt";
}

struct Builder {
  std::string_view line;
  std::string_view kind;
  const std::vector<std::string>& args;

  void Need(size_t n) const {
    if (args.size() < n) Malformed(line, "missing arguments");
  }
  PokemonRef Ref(size_t i) const {
    Need(i + 1);
    auto ref = ParseRef(args[i]);
    if (!ref) Malformed(line, "bad pokemon reference '" + args[i] + "'");
    return *ref;
  }
  HpStatus Hp(size_t i) const {
    Need(i + 1);
    try {
      return ParseHp(args[i]);
    } catch (const Error&) {
      Malformed(line, "bad hp '" + args[i] + "'");
    }
  }
  int Int(size_t i) const {
    Need(i + 1);
    int v = 0;
    if (!ParseInt(args[i], v)) Malformed(line, "bad integer '" + args[i] + "'");
    return v;
  }
  Side SideArg(size_t i) const {
    Need(i + 1);
    Side s;
    if (!ParseSideId(args[i], s)) Malformed(line, "bad side '" + args[i] + "'");
    return s;
  }
};

template <typename T>
T MakeSwitch(const Builder& b) {
  T out;
  out.pokemon = b.Ref(0);
  b.Need(3);
  out.details = b.args[1];
  if (out.details.empty()) Malformed(b.line, "empty details");
  out.hp = b.Hp(2);
  out.tags = TailFrom(b.args, 3);
  return out;
}

template <typename T>
T MakeHpChange(const Builder& b) {
  T out;
  out.target = b.Ref(0);
  out.hp = b.Hp(1);
  out.tags = TailFrom(b.args, 2);
  return out;
}

template <typename T>
T MakeStatus(const Builder& b) {
  T out;
  out.target = b.Ref(0);
  b.Need(2);
  out.status = b.args[1];
  if (!ValidStatus(out.status) || out.status == "fnt") Malformed(b.line, "bad status");
  out.tags = TailFrom(b.args, 2);
  return out;
}

template <typename T>
T MakeBoost(const Builder& b) {
  T out;
  out.target = b.Ref(0);
  b.Need(3);
  out.stat = b.args[1];
  if (out.stat.empty()) Malformed(b.line, "empty stat");
  out.amount = b.Int(2);
  if (out.amount < 0) Malformed(b.line, "negative boost amount");
  out.tags = TailFrom(b.args, 3);
  return out;
}

EventKind BuildTyped(const Builder& b) {
  const auto& a = b.args;
  std::string_view k = b.kind;
  if (k == "turn") {
    Turn t{b.Int(0)};
    if (t.number < 1 || a.size() != 1) Malformed(b.line, "bad turn");
    return t;
  }
  if (k == "move") {
    Move m;
    m.user = b.Ref(0);
    b.Need(2);
    m.move = a[1];
    if (m.move.empty()) Malformed(b.line, "empty move");
    if (a.size() >= 3) m.target = a[2];
    m.tags = TailFrom(a, 3);
    return m;
  }
  if (k == "switch") return MakeSwitch<Switch>(b);
  if (k == "drag") return MakeSwitch<Drag>(b);
  if (k == "-damage") return MakeHpChange<Damage>(b);
  if (k == "-heal") return MakeHpChange<Heal>(b);
  if (k == "-status") return MakeStatus<SetStatus>(b);
  if (k == "-curestatus") return MakeStatus<CureStatus>(b);
  if (k == "-boost") return MakeBoost<Boost>(b);
  if (k == "-unboost") return MakeBoost<Unboost>(b);
  if (k == "faint") return Faint{b.Ref(0), TailFrom(a, 1)};
  if (k == "-weather") {
    b.Need(1);
    if (a[0].empty()) Malformed(b.line, "empty weather");
    return Weather{a[0], TailFrom(a, 1)};
  }
  if (k == "-sidestart" || k == "-sideend") {
    b.Need(2);
    SideCondition sc;
    if (a[0].size() < 2 || !ParseSideId(std::string_view(a[0]).substr(0, 2), sc.side))
      Malformed(b.line, "bad side label");
    sc.side_label = a[0];
    sc.condition = a[1];
    sc.start = k == "-sidestart";
    sc.tags = TailFrom(a, 2);
    return sc;
  }
  if (k == "-fieldstart" || k == "-fieldend") {
    b.Need(1);
    return FieldCondition{a[0], k == "-fieldstart", TailFrom(a, 1)};
  }
  if (k == "-item" || k == "-enditem") {
    Item it;
    it.target = b.Ref(0);
    b.Need(2);
    it.item = a[1];
    if (it.item.empty()) Malformed(b.line, "empty item");
    it.ended = k == "-enditem";
    it.tags = TailFrom(a, 2);
    return it;
  }
  if (k == "-ability") {
    Ability ab;
    ab.target = b.Ref(0);
    b.Need(2);
    ab.ability = a[1];
    if (ab.ability.empty()) Malformed(b.line, "empty ability");
    ab.tags = TailFrom(a, 2);
    return ab;
  }
  if (k == "cant") {
    Cant c;
    c.target = b.Ref(0);
    b.Need(2);
    c.reason = a[1];
    c.tags = TailFrom(a, 2);
    return c;
  }
  if (k == "player") {
    Player p;
    p.side = b.SideArg(0);
    p.fields = TailFrom(a, 1);
    return p;
  }
  if (k == "teamsize") {
    TeamSize ts{b.SideArg(0), b.Int(1)};
    if (ts.size < 1 || ts.size > 6 || a.size() != 2) Malformed(b.line, "bad team size");
    return ts;
  }
  if (k == "tier") {
    b.Need(1);
    if (a.size() != 1 || a[0].empty()) Malformed(b.line, "bad tier");
    return Format{a[0]};
  }
  if (k == "rated") return Rated{TailFrom(a, 0)};
  if (k == "win") {
    if (a.size() != 1) Malformed(b.line, "bad win");
    return Win{a[0]};
  }
  // tie
  return Tie{TailFrom(a, 0)};
}

void AppendArgs(std::string& out, std::initializer_list<std::string_view> fixed, const Tags& tags) {
  for (auto f : fixed) {
    out += '|';
    out += f;
  }
  for (const auto& t : tags) {
    out += '|';
    out += t;
  }
}

std::string Serialize(const EventKind& kind) {
  std::string out;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Turn>) {
          AppendArgs(out, {"turn", std::to_string(e.number)}, {});
        } else if constexpr (std::is_same_v<T, Move>) {
          std::string user = FormatRef(e.user);
          AppendArgs(out, {"move", user, e.move}, {});
          if (e.target) AppendArgs(out, {*e.target}, e.tags);
        } else if constexpr (std::is_same_v<T, Switch> || std::is_same_v<T, Drag>) {
          AppendArgs(out,
                     {std::is_same_v<T, Switch> ? "switch" : "drag", FormatRef(e.pokemon),
                      e.details, FormatHp(e.hp)},
                     e.tags);
        } else if constexpr (std::is_same_v<T, Damage> || std::is_same_v<T, Heal>) {
          AppendArgs(out,
                     {std::is_same_v<T, Damage> ? "-damage" : "-heal", FormatRef(e.target),
                      FormatHp(e.hp)},
                     e.tags);
        } else if constexpr (std::is_same_v<T, SetStatus> || std::is_same_v<T, CureStatus>) {
          AppendArgs(out,
                     {std::is_same_v<T, SetStatus> ? "-status" : "-curestatus",
                      FormatRef(e.target), e.status},
                     e.tags);
        } else if constexpr (std::is_same_v<T, Boost> || std::is_same_v<T, Unboost>) {
          AppendArgs(out,
                     {std::is_same_v<T, Boost> ? "-boost" : "-unboost", FormatRef(e.target),
                      e.stat, std::to_string(e.amount)},
                     e.tags);
        } else if constexpr (std::is_same_v<T, Faint>) {
          AppendArgs(out, {"faint", FormatRef(e.target)}, e.tags);
        } else if constexpr (std::is_same_v<T, Weather>) {
          AppendArgs(out, {"-weather", e.weather}, e.tags);
        } else if constexpr (std::is_same_v<T, SideCondition>) {
          AppendArgs(out, {e.start ? "-sidestart" : "-sideend", e.side_label, e.condition},
                     e.tags);
        } else if constexpr (std::is_same_v<T, FieldCondition>) {
          AppendArgs(out, {e.start ? "-fieldstart" : "-fieldend", e.condition}, e.tags);
        } else if constexpr (std::is_same_v<T, Item>) {
          AppendArgs(out, {e.ended ? "-enditem" : "-item", FormatRef(e.target), e.item}, e.tags);
        } else if constexpr (std::is_same_v<T, Ability>) {
          AppendArgs(out, {"-ability", FormatRef(e.target), e.ability}, e.tags);
        } else if constexpr (std::is_same_v<T, Cant>) {
          AppendArgs(out, {"cant", FormatRef(e.target), e.reason}, e.tags);
        } else if constexpr (std::is_same_v<T, Player>) {
          AppendArgs(out, {"player", SideId(e.side)}, e.fields);
        } else if constexpr (std::is_same_v<T, TeamSize>) {
          AppendArgs(out, {"teamsize", SideId(e.side), std::to_string(e.size)}, {});
        } else if constexpr (std::is_same_v<T, Format>) {
          AppendArgs(out, {"tier", e.name}, {});
        } else if constexpr (std::is_same_v<T, Rated>) {
          AppendArgs(out, {"rated"}, e.tags);
        } else if constexpr (std::is_same_v<T, Win>) {
          AppendArgs(out, {"win", e.winner}, {});
        } else if constexpr (std::is_same_v<T, Tie>) {
          AppendArgs(out, {"tie"}, e.tags);
        } else {
          if (e.kind.empty() && e.args.empty()) {
            out = "|";
          } else {
            AppendArgs(out, {e.kind}, e.args);
          }
        }
      },
      kind);
  return out;
}

}  // namespace

std::string SwitchIn::Species() const {
  return details.substr(0, details.find(','));
}

int SwitchIn::Level() const {
  size_t pos = 0;
  while ((pos = details.find(", L", pos)) != std::string::npos) {
    int level = 0;
    size_t start = pos + 3;
    size_t end = details.find(',', start);
    if (ParseInt(std::string_view(details).substr(start, end == std::string::npos ? std::string::npos
                                                                                   : end - start),
                 level))
      return level;
    pos = start;
  }
  return 100;
}

std::string SideCondition::Name() const {
  constexpr std::string_view kPrefix = "move: ";
  if (condition.rfind(kPrefix, 0) == 0) return condition.substr(kPrefix.size());
  return condition;
}

std::optional<int> Player::Rating() const {
  int r = 0;
  if (fields.size() >= 3 && ParseInt(fields[2], r)) return r;
  return std::nullopt;
}

const Raw* ProtocolEvent::AsRaw(std::string_view kind_name) const {
  const Raw* r = As<Raw>();
  return r && r->kind == kind_name ? r : nullptr;
}

std::optional<PokemonRef> ParseRef(std::string_view text) {
  if (text.size() < 6 || text[0] != 'p' || text[2] != 'a' || text[3] != ':' || text[4] != ' ')
    return std::nullopt;
  PokemonRef ref;
  if (text[1] == '1') ref.side = Side::kP1;
  else if (text[1] == '2') ref.side = Side::kP2;
  else return std::nullopt;
  ref.name = std::string(text.substr(5));
  return ref;
}

std::string FormatRef(const PokemonRef& ref) {
  return std::string(SideId(ref.side)) + "a: " + ref.name;
}

HpStatus ParseHp(std::string_view text) {
  HpStatus hp;
  std::string_view value = text;
  size_t space = text.find(' ');
  if (space != std::string_view::npos) {
    hp.status = std::string(text.substr(space + 1));
    value = text.substr(0, space);
    if (!ValidStatus(hp.status)) Fail(ErrorCode::kMalformedField, "bad hp status");
  }
  size_t slash = value.find('/');
  if (slash == std::string_view::npos) {
    if (!ParseInt(value, hp.numerator) || hp.numerator != 0)
      Fail(ErrorCode::kMalformedField, "bad hp value");
    hp.bare = true;
    hp.denominator = 0;
    return hp;
  }
  if (!ParseInt(value.substr(0, slash), hp.numerator) ||
      !ParseInt(value.substr(slash + 1), hp.denominator) || hp.denominator <= 0 ||
      hp.numerator < 0 || hp.numerator > hp.denominator)
    Fail(ErrorCode::kMalformedField, "bad hp value");
  return hp;
}

std::string FormatHp(const HpStatus& hp) {
  std::string out = hp.bare ? std::to_string(hp.numerator)
                            : std::to_string(hp.numerator) + "/" + std::to_string(hp.denominator);
  if (!hp.status.empty()) out += " " + hp.status;
  return out;
}

std::optional<std::string> FindTag(const Tags& tags, std::string_view prefix) {
  for (const auto& t : tags) {
    if (t.rfind(prefix, 0) == 0) {
      std::string_view rest = std::string_view(t).substr(prefix.size());
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      return std::string(rest);
    }
  }
  return std::nullopt;
}

std::span<const std::string_view> TypedKinds() { return kTyped; }
std::span<const std::string_view> RawKinds() { return kRaw; }

bool KnownKind(std::string_view kind) {
  return std::find(std::begin(kTyped), std::end(kTyped), kind) != std::end(kTyped) ||
         std::find(std::begin(kRaw), std::end(kRaw), kind) != std::end(kRaw);
}

ProtocolEvent parse_line(std::string_view line, Mode mode) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty()) Fail(ErrorCode::kMalformedField, "empty line");
  if (line.front() != '|') {
    // Bare text lines are plain messages in the log format.
    if (mode == Mode::kStrict)
      Fail(ErrorCode::kMalformedField, "line does not start with '|': " + std::string(line));
    return ProtocolEvent{Raw{"", {std::string(line)}}, std::string(line)};
  }
  std::vector<std::string> parts = Split(line.substr(1));
  std::string kind = parts.front();
  std::vector<std::string> args(parts.begin() + 1, parts.end());
  ProtocolEvent event;
  event.source_line = std::string(line);
  if (std::find(std::begin(kTyped), std::end(kTyped), kind) != std::end(kTyped)) {
    event.kind = BuildTyped(Builder{line, kind, args});
    return event;
  }
  if (mode == Mode::kStrict && !KnownKind(kind))
    Fail(ErrorCode::kUnknownMessage, "unknown message kind '" + kind + "'");
  if (line == "|") args.clear();
  event.kind = Raw{std::move(kind), std::move(args)};
  return event;
}

std::string serialize_event(const ProtocolEvent& e) {
  if (e.Is<Raw>()) {
    if (!e.source_line.empty()) return e.source_line;
  }
  return Serialize(e.kind);
}

ProtocolEvent MakeEvent(EventKind kind) {
  ProtocolEvent e;
  e.kind = std::move(kind);
  e.source_line = Serialize(e.kind);
  return e;
}

bool ReplayDocument::HasTerminal() const {
  return std::any_of(events.begin(), events.end(),
                     [](const ProtocolEvent& e) { return e.IsTerminal(); });
}

std::string Pseudonym(std::string_view name) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x",
                static_cast<unsigned>(Fnv1a(ToId(name)) & 0xffffffffu));
  return std::string("anon-") + buf;
}

namespace {

void Anonymize(ReplayDocument& doc) {
  for (auto& e : doc.events) {
    if (auto* p = std::get_if<Player>(&e.kind)) {
      if (!p->fields.empty() && !p->fields[0].empty()) p->fields[0] = Pseudonym(p->fields[0]);
      if (p->fields.size() >= 2) p->fields[1] = "";
      e.source_line = Serialize(e.kind);
    } else if (auto* w = std::get_if<Win>(&e.kind)) {
      w->winner = Pseudonym(w->winner);
      e.source_line = Serialize(e.kind);
    } else if (auto* r = std::get_if<Raw>(&e.kind)) {
      const std::string& k = r->kind;
      bool changed = false;
      if ((k == "j" || k == "J" || k == "l" || k == "L" || k == "n" || k == "N") &&
          !r->args.empty()) {
        for (auto& a : r->args) a = Pseudonym(a);
        changed = true;
      } else if ((k == "c" || k == "chat") && !r->args.empty()) {
        r->args[0] = Pseudonym(r->args[0]);
        r->args.resize(2);
        r->args[1] = "[redacted]";
        changed = true;
      } else if (k == "c:" && r->args.size() >= 2) {
        r->args[1] = Pseudonym(r->args[1]);
        r->args.resize(3);
        r->args[2] = "[redacted]";
        changed = true;
      } else if (k.empty() && !r->args.empty() && !e.source_line.empty() &&
                 e.source_line.front() != '|') {
        r->args = {"[redacted]"};
        e.source_line = "[redacted]";
      }
      if (changed) e.source_line = Serialize(e.kind);
    }
  }
  for (auto& p : doc.players) {
    if (!p.empty()) p = Pseudonym(p);
  }
}

}  // namespace

ReplayDocument parse_replay(std::string_view raw, const ParseOptions& options) {
  ReplayDocument doc;
  bool seen_format = false;
  std::array<bool, 2> seen_player{false, false};
  std::array<bool, 2> seen_teamsize{false, false};
  bool seen_turn = false;
  bool terminal = false;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= raw.size()) {
    size_t nl = raw.find('\n', start);
    std::string_view line =
        raw.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    // Blank lines separate message blocks in stored logs; they carry no event.
    if (line.empty()) continue;
    ProtocolEvent event;
    try {
      event = parse_line(line, options.mode);
    } catch (const Error& err) {
      Fail(err.code(), "line " + std::to_string(line_no) + ": " + err.what());
    }
    if (terminal) {
      if (event.IsTerminal())
        Fail(ErrorCode::kMalformedField,
             "line " + std::to_string(line_no) + ": second terminal message");
      // Room messages (leaves, rating updates) legitimately trail the result.
      if (!event.Is<Raw>())
        Fail(ErrorCode::kMalformedField,
             "line " + std::to_string(line_no) + ": event after battle end");
    }
    if (const auto* f = event.As<Format>()) {
      seen_format = true;
      doc.format_name = f->name;
      doc.format_id = ToId(f->name);
    } else if (const auto* p = event.As<Player>()) {
      // Player lines repeat when a player leaves and rejoins; keep the first name.
      if (!seen_player[Index(p->side)]) doc.players[Index(p->side)] = p->Name();
      seen_player[Index(p->side)] = true;
      if (auto r = p->Rating()) doc.rating = std::max(doc.rating.value_or(0), *r);
    } else if (const auto* ts = event.As<TeamSize>()) {
      seen_teamsize[Index(ts->side)] = true;
    } else if (event.Is<Turn>()) {
      if (!seen_turn) {
        if (!seen_format || !seen_player[0] || !seen_player[1])
          Fail(ErrorCode::kMissingHeader, "format and both players must precede the first turn");
        if (options.mode == Mode::kStrict && (!seen_teamsize[0] || !seen_teamsize[1]))
          Fail(ErrorCode::kMissingHeader, "team sizes must precede the first turn");
      }
      seen_turn = true;
    } else if (const auto* r = event.AsRaw("t:")) {
      int64_t t = 0;
      if (!doc.upload_time && !r->args.empty()) {
        const std::string& s = r->args[0];
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
        if (ec == std::errc() && ptr == s.data() + s.size()) doc.upload_time = t;
      }
    } else if (event.IsTerminal()) {
      terminal = true;
    }
    doc.events.push_back(std::move(event));
  }
  if (!seen_format || !seen_player[0] || !seen_player[1])
    Fail(ErrorCode::kMissingHeader, "log lacks a format or player header");
  if (options.anonymize) Anonymize(doc);
  return doc;
}

std::string serialize_replay(const ReplayDocument& doc) {
  std::string out;
  for (const auto& e : doc.events) {
    out += serialize_event(e);
    out += '\n';
  }
  return out;
}

}  // namespace battlelog::protocol
