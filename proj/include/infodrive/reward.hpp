// Copyright (c) 2026 The infodrive Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Combines extrinsic and intrinsic rewards into the scalar episodic reward.

#include <string>

#include "infodrive/common.hpp"
#include "infodrive/infotheory.hpp"

namespace infodrive::reward {

enum class IrfKind { kNone, kPredictiveInformation, kEntropy };

IrfKind parse_irf_kind(const std::string& name);
std::string to_string(IrfKind kind);

struct RewardBreakdown {
  double erf_total = 0.0;
  double irf_value = 0.0;
  double beta = 0.0;
  double combined = 0.0;
};

/// gamma * T * max_erf. Episode-terminal rewards use T = 1 and a reference
/// reward in place of the per-step maximum.
double beta(double gamma, int steps, double max_erf);

RewardBreakdown combine(double erf_total, double irf_value, double beta);

/// How a trace is reduced to an intrinsic reward.
struct IrfSpec {
  enum class Mode { kSingleChannel, kPairwise };
  Mode mode = Mode::kSingleChannel;
  /// Single-channel mode.
  std::size_t channel = 0;
  int bins = 30;
  /// Pairwise mode: pairs are drawn from channels [0, pair_channels).
  int pair_channels = 12;
  int pairs = 20;
  int pair_bins = 10;
};

/// Normalized IRF in [0, 1]. `pairing` is required in pairwise mode.
double episode_irf(const info::SensorTrace& trace, IrfKind kind, const IrfSpec& spec,
                   const info::SensorPairing* pairing = nullptr);

}  // namespace infodrive::reward
