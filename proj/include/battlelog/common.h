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

#ifndef BATTLELOG_COMMON_H_
#define BATTLELOG_COMMON_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace battlelog {

enum class ErrorCode {
  kUnknownMessage,
  kMalformedField,
  kMissingHeader,
  kBattleOver,
  kUnknownName,
  kInconsistentEvent,
  kUnsupportedMechanic,
  kContradictoryReveal,
  kNoStatsForSpecies,
  kEmptyStats,
  kUnmappableChoice,
  kTruncatedLog,
  kSchemaMismatch,
  kIllegalTeam,
  kInvalidArgument,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception; `code()` tells
// callers (and the CLI's exit-code mapping) which family it belongs to.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

enum class Side : int { kP1 = 0, kP2 = 1 };

inline int Index(Side s) { return static_cast<int>(s); }
inline Side Other(Side s) { return s == Side::kP1 ? Side::kP2 : Side::kP1; }
inline std::string_view SideId(Side s) { return s == Side::kP1 ? "p1" : "p2"; }

// Lowercase alphanumeric id, the normalisation used for tokens and format ids
// ("Body Slam" -> "bodyslam", "[Gen 1] OU" -> "gen1ou").
std::string ToId(std::string_view text);

// splitmix64 finaliser.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t HashCombine(uint64_t a, uint64_t b) { return Mix64(a ^ Mix64(b)); }

uint64_t Fnv1a(std::string_view text);

// Sequential deterministic stream; used where a plain seed is all the caller
// has (team generation, sampling, agent tie-breaks).
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}
  uint64_t NextU64() { return Mix64(state_++ * 0xd1342543de82ef95ULL + 1); }
  // Uniform integer in [0, n).
  int Below(int n);
  // Uniform real in [0, 1).
  double Uniform();

 private:
  uint64_t state_;
};

// Runs fn(0..n-1) on up to `workers` threads. Results must be written by
// index so the outcome does not depend on scheduling. The first exception
// thrown by any call is rethrown after every worker has stopped.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

}  // namespace battlelog

#endif  // BATTLELOG_COMMON_H_
