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
#include <numbers>

#include "battlelog/evalharness.h"

namespace battlelog::eval {
namespace {

const double kQ = std::log(10.0) / 400.0;

double G(double rd) {
  return 1.0 / std::sqrt(1.0 + 3.0 * kQ * kQ * rd * rd / (std::numbers::pi * std::numbers::pi));
}

double Expected(double r, double rj, double rdj) {
  return 1.0 / (1.0 + std::pow(10.0, -G(rdj) * (r - rj) / 400.0));
}

}  // namespace

RatingState glicko1_update(const RatingState& state, const std::vector<GameOutcome>& games,
                           const GlickoConfig& config, int elapsed_periods) {
  if (elapsed_periods < 0) Fail(ErrorCode::kInvalidArgument, "negative elapsed periods");
  RatingState out = state;
  out.last_period = state.last_period + elapsed_periods;
  double rd = std::sqrt(state.rd * state.rd + config.c * config.c * elapsed_periods);
  rd = std::min(rd, config.initial_rd);
  if (games.empty()) {
    out.rd = std::max(rd, config.min_rd);
    return out;
  }
  double inv_d2 = 0.0;
  double sum = 0.0;
  for (const GameOutcome& g : games) {
    if (g.score != 0.0 && g.score != 0.5 && g.score != 1.0)
      Fail(ErrorCode::kInvalidArgument, "game score must be 0, 0.5 or 1");
    const double gj = G(g.rd);
    const double e = Expected(state.rating, g.rating, g.rd);
    inv_d2 += kQ * kQ * gj * gj * e * (1.0 - e);
    sum += gj * (g.score - e);
  }
  const double denom = 1.0 / (rd * rd) + inv_d2;
  out.rating = state.rating + kQ / denom * sum;
  out.rd = std::clamp(std::sqrt(1.0 / denom), config.min_rd, config.initial_rd);
  return out;
}

std::optional<double> gxe(const RatingState& s) {
  if (!(s.rd <= kGxeRdCutoff)) return std::nullopt;
  const double ln10 = std::log(10.0);
  const double pi = std::numbers::pi;
  const double spread =
      std::sqrt(3.0 * ln10 * ln10 * s.rd * s.rd + 2500.0 * (64.0 * pi * pi + 147.0 * ln10 * ln10));
  const double p = 1.0 / (1.0 + std::pow(10.0, (1500.0 - s.rating) * pi / spread));
  return std::round(p * 10000.0) / 100.0;
}

}  // namespace battlelog::eval
