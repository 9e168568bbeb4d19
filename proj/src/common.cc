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

#include "battlelog/common.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace battlelog {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownMessage: return "UnknownMessage";
    case ErrorCode::kMalformedField: return "MalformedField";
    case ErrorCode::kMissingHeader: return "MissingHeader";
    case ErrorCode::kBattleOver: return "BattleOver";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kInconsistentEvent: return "InconsistentEvent";
    case ErrorCode::kUnsupportedMechanic: return "UnsupportedMechanic";
    case ErrorCode::kContradictoryReveal: return "ContradictoryReveal";
    case ErrorCode::kNoStatsForSpecies: return "NoStatsForSpecies";
    case ErrorCode::kEmptyStats: return "EmptyStats";
    case ErrorCode::kUnmappableChoice: return "UnmappableChoice";
    case ErrorCode::kTruncatedLog: return "TruncatedLog";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kIllegalTeam: return "IllegalTeam";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(ErrorCodeName(code)) + ": " + what);
}

std::string ToId(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

uint64_t Fnv1a(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

int SeededRng::Below(int n) {
  if (n <= 0) Fail(ErrorCode::kInvalidArgument, "SeededRng::Below needs n > 0");
  return static_cast<int>((static_cast<unsigned __int128>(NextU64()) * static_cast<unsigned>(n)) >> 64);
}

double SeededRng::Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace battlelog
