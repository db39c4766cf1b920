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

#include "infodrive/reward.hpp"

#include <cmath>

namespace infodrive::reward {

IrfKind parse_irf_kind(const std::string& name) {
  if (name == "none") return IrfKind::kNone;
  if (name == "pi" || name == "predictive-information") return IrfKind::kPredictiveInformation;
  if (name == "entropy") return IrfKind::kEntropy;
  throw ConfigError("unknown irf kind '" + name + "' (expected none, pi or entropy)");
}

std::string to_string(IrfKind kind) {
  switch (kind) {
    case IrfKind::kNone:
      return "none";
    case IrfKind::kPredictiveInformation:
      return "pi";
    case IrfKind::kEntropy:
      return "entropy";
  }
  return "none";
}

double beta(double gamma, int steps, double max_erf) {
  require(gamma >= 0.0 && std::isfinite(gamma), "beta: gamma must be finite and >= 0");
  require(steps >= 1, "beta: T must be >= 1");
  require(max_erf > 0.0 && std::isfinite(max_erf), "beta: max_erf must be positive");
  return gamma * static_cast<double>(steps) * max_erf;
}

RewardBreakdown combine(double erf_total, double irf_value, double beta) {
  if (!std::isfinite(erf_total) || !std::isfinite(irf_value) || !std::isfinite(beta)) {
    throw NumericError("combine: non-finite reward component");
  }
  require(irf_value >= 0.0 && irf_value <= 1.0, "combine: irf_value outside [0, 1]");
  return {erf_total, irf_value, beta, erf_total + beta * irf_value};
}

double episode_irf(const info::SensorTrace& trace, IrfKind kind, const IrfSpec& spec,
                   const info::SensorPairing* pairing) {
  if (kind == IrfKind::kNone) return 0.0;
  if (spec.mode == IrfSpec::Mode::kSingleChannel) {
    const auto seq = info::discretize(trace, spec.channel, spec.bins);
    return kind == IrfKind::kEntropy ? info::normalized_entropy(seq) : info::normalized_pi(seq);
  }
  require(pairing != nullptr, "episode_irf: pairwise mode needs a pairing");
  return kind == IrfKind::kEntropy ? info::pairwise_entropy(trace, *pairing, spec.pair_bins)
                                   : info::pairwise_pi(trace, *pairing, spec.pair_bins);
}

}  // namespace infodrive::reward
