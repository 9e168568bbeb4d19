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

#ifndef BATTLELOG_OBSERVATION_H_
#define BATTLELOG_OBSERVATION_H_

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "battlelog/engine.h"
#include "battlelog/tracker.h"

namespace battlelog::trajectory {

inline constexpr int kNumTokens = 87;
inline constexpr int kNumNumeric = 48;
inline constexpr int kObservationVersion = 1;

inline constexpr std::string_view kPad = "<pad>";
inline constexpr std::string_view kUnknown = "<unknown>";

// Fixed slot names, one per position. docs/observation_layout.md mirrors these.
const std::array<std::string_view, kNumTokens>& TokenSlotNames();
const std::array<std::string_view, kNumNumeric>& NumericSlotNames();

struct Observation {
  std::array<std::string, kNumTokens> words;
  std::array<double, kNumNumeric> numeric{};
  std::array<bool, engine::kNumActions> illegal{};

  bool operator==(const Observation&) const = default;
};

// Encodes what the view's player can see. Opponent bench Pokemon never appear.
Observation build_observation(const engine::PovView& view);

// Token <-> id bijection. Ids 0 and 1 are always <pad> and <unknown>.
class Vocabulary {
 public:
  Vocabulary();
  static Vocabulary Build(const std::vector<std::string>& words);
  int Id(std::string_view word) const;
  const std::string& Word(int id) const { return words_.at(id); }
  int size() const { return static_cast<int>(words_.size()); }
  std::array<int, kNumTokens> Encode(const std::array<std::string, kNumTokens>& words) const;
  std::string ToJsonText() const;
  static Vocabulary FromJsonText(const std::string& text);

 private:
  void Add(const std::string& w);
  std::vector<std::string> words_;
  std::map<std::string, int, std::less<>> ids_;
};

}  // namespace battlelog::trajectory

#endif  // BATTLELOG_OBSERVATION_H_
