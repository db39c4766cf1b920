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

// Parameter-exploring policy gradients with symmetric sampling.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infodrive/common.hpp"

namespace infodrive::pgpe {

/// How a batch's pair-mean rewards enter the baseline update.
enum class BaselineRule {
  kBatchMean,  ///< b <- (1-delta) b + delta * mean_n (r+ + r-)/2
  kBatchSum,   ///< b <- (1-delta) b + delta * sum_n (r+ + r-)/2, as printed
};

/// Reward term of the sigma update.
enum class SigmaRule {
  kStandard,      ///< (r+ + r-)/2 - b
  kDifference,    ///< (r+ - r-)/2 - b
};

struct Hyperparameters {
  double alpha = 0.1;
  /// Learning rate of sigma; negative means "same as alpha".
  double alpha_sigma = -1.0;
  double delta = 0.1;
  double sigma_init = 2.0;
  /// Most-negative finite value stands in for minus infinity.
  double m_init = std::numeric_limits<double>::lowest();
  int rollouts_per_batch = 2;
  BaselineRule baseline_rule = BaselineRule::kBatchMean;
  SigmaRule sigma_rule = SigmaRule::kStandard;
  double sigma_min = 1e-6;
  double denominator_tolerance = 1e-9;

  double effective_alpha_sigma() const { return alpha_sigma > 0.0 ? alpha_sigma : alpha; }
  void validate() const;
};

struct SearchDistribution {
  std::vector<double> mu;
  std::vector<double> sigma;
  double baseline = 0.0;
  /// The baseline starts from the first batch's pair-mean reward.
  bool baseline_initialized = false;
  double max_reward = std::numeric_limits<double>::lowest();

  static SearchDistribution initial(std::size_t parameters, const Hyperparameters& hp);
  std::size_t size() const { return mu.size(); }
};

struct SymmetricSample {
  std::vector<double> theta_plus;
  std::vector<double> theta_minus;
  std::vector<double> epsilon;
};

struct RolloutPair {
  std::vector<double> epsilon;
  double r_plus = 0.0;
  double r_minus = 0.0;
};

/// Counts of skipped contributions in one update.
struct UpdateReport {
  int skipped_mu_pairs = 0;
  bool skipped_sigma = false;
};

/// eps_i ~ N(0, sigma_i); theta+ = mu + eps, theta- = mu - eps.
SymmetricSample sample_symmetric(const SearchDistribution& dist, Rng& rng);

/// One learning step over a non-empty batch of roll-outs. Per-pair
/// contributions to mu and sigma are averaged.
SearchDistribution update(const SearchDistribution& dist, std::span<const RolloutPair> batch,
                          const Hyperparameters& hp, UpdateReport* report = nullptr);

/// Single-pair mean change, exposed for formula checks.
double mu_delta(double alpha, double epsilon, double r_plus, double r_minus, double max_reward);

struct BatchRecord {
  int batch = 0;
  std::vector<double> r_plus;
  std::vector<double> r_minus;
  double baseline = 0.0;
  double max_reward = 0.0;
  std::vector<double> mu;
  UpdateReport report;
};

using Objective = std::function<double(std::span<const double>)>;

/// Runs `batches` learning steps of `hp.rollouts_per_batch` symmetric
/// evaluations each. Throws NumericError if the objective returns a
/// non-finite value.
std::vector<BatchRecord> run_optimization(const Objective& objective, SearchDistribution& dist,
                                          const Hyperparameters& hp, int batches, Rng& rng);

}  // namespace infodrive::pgpe
