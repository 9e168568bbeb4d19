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


#ifndef BATTLELOG_RLMATH_DEFAULTS_H_
#define BATTLELOG_RLMATH_DEFAULTS_H_

// Every tunable constant of the offline RL math lives here.

namespace battlelog::rlmath::defaults {

// Exponentiated-advantage actor weight.
inline constexpr double kExpBeta = 0.5;
inline constexpr double kExpClipLo = 1e-5;
inline constexpr double kExpClipHi = 50.0;

// The "extreme" ablation: sharper temperature and a higher ceiling.
inline constexpr double kExpExtremeBeta = 1.0;
inline constexpr double kExpExtremeClipHi = 100.0;

// Coefficient on the expected-Q term for the filtered-BC-plus-max-Q variant.
inline constexpr double kMaxQLambda = 10.0;

// Two-hot value head layout.
inline constexpr int kValueBins = 96;
inline constexpr double kValueLo = -110.0;
inline constexpr double kValueHi = 110.0;

// Discount heads; the last one is the head used for evaluation.
inline constexpr double kGammas[] = {0.7, 0.9, 0.95, 0.99, 0.995, 0.999};
inline constexpr double kEvalGamma = 0.999;

// Win probability decoding: q in [-scale, +scale] maps onto [0, 1].
inline constexpr double kRewardScale = 100.0;

// Resign when the win estimate stays below the threshold for this many turns.
inline constexpr double kForfeitThreshold = 0.05;
inline constexpr int kForfeitTurns = 5;

// Probability vectors must sum to one within this tolerance.
inline constexpr double kMassTolerance = 1e-6;

}  // namespace battlelog::rlmath::defaults

#endif  // BATTLELOG_RLMATH_DEFAULTS_H_
