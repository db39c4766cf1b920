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

#include "infodrive/pgpe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace infodrive::pgpe {

void Hyperparameters::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  require(in_unit(alpha), "pgpe: alpha must lie in (0, 1]");
  require(alpha_sigma <= 0.0 || in_unit(alpha_sigma), "pgpe: alpha_sigma must lie in (0, 1]");
  require(in_unit(delta), "pgpe: delta must lie in (0, 1]");
  require(sigma_init > 0.0, "pgpe: sigma_init must be positive");
  require(rollouts_per_batch >= 1, "pgpe: rollouts_per_batch must be >= 1");
  require(sigma_min > 0.0, "pgpe: sigma_min must be positive");
  require(std::isfinite(m_init), "pgpe: m_init must be finite");
}

SearchDistribution SearchDistribution::initial(std::size_t parameters, const Hyperparameters& hp) {
  hp.validate();
  SearchDistribution d;
  d.mu.assign(parameters, 0.0);
  d.sigma.assign(parameters, std::max(hp.sigma_init, hp.sigma_min));
  d.max_reward = hp.m_init;
  return d;
}

SymmetricSample sample_symmetric(const SearchDistribution& dist, Rng& rng) {
  SymmetricSample s;
  const auto n = dist.size();
  s.epsilon.resize(n);
  s.theta_plus.resize(n);
  s.theta_minus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = dist.sigma[i] * rng.normal();
    s.epsilon[i] = eps;
    s.theta_plus[i] = dist.mu[i] + eps;
    s.theta_minus[i] = dist.mu[i] - eps;
  }
  return s;
}

double mu_delta(double alpha, double epsilon, double r_plus, double r_minus, double max_reward) {
  return alpha * epsilon * (r_plus - r_minus) / (2.0 * max_reward - (r_plus + r_minus));
}

SearchDistribution update(const SearchDistribution& dist, std::span<const RolloutPair> batch,
                          const Hyperparameters& hp, UpdateReport* report) {
  require(!batch.empty(), "pgpe::update: empty batch");
  const auto n = dist.size();
  for (const auto& pair : batch) {
    require(pair.epsilon.size() == n, "pgpe::update: epsilon length does not match mu");
    if (!std::isfinite(pair.r_plus) || !std::isfinite(pair.r_minus)) {
      throw NumericError("pgpe::update: non-finite reward in batch");
    }
  }

  SearchDistribution next = dist;
  UpdateReport local;
  const double pairs = static_cast<double>(batch.size());

  double pair_mean_sum = 0.0;
  for (const auto& pair : batch) {
    next.max_reward = std::max({next.max_reward, pair.r_plus, pair.r_minus});
    pair_mean_sum += 0.5 * (pair.r_plus + pair.r_minus);
  }
  const double aggregate =
      hp.baseline_rule == BaselineRule::kBatchMean ? pair_mean_sum / pairs : pair_mean_sum;
  next.baseline = dist.baseline_initialized
                      ? (1.0 - hp.delta) * dist.baseline + hp.delta * aggregate
                      : aggregate;
  next.baseline_initialized = true;

  const double m = next.max_reward;
  const double b = next.baseline;
  std::vector<double> d_mu(n, 0.0);
  for (const auto& pair : batch) {
    const double denom = 2.0 * m - (pair.r_plus + pair.r_minus);
    if (denom <= hp.denominator_tolerance) {
      ++local.skipped_mu_pairs;
      continue;
    }
    const double scale = hp.alpha * (pair.r_plus - pair.r_minus) / denom;
    for (std::size_t i = 0; i < n; ++i) d_mu[i] += scale * pair.epsilon[i];
  }

  std::vector<double> d_sigma(n, 0.0);
  const double spread = m - b;
  if (spread <= hp.denominator_tolerance) {
    local.skipped_sigma = true;
  } else {
    const double rate = hp.effective_alpha_sigma() / spread;
    for (const auto& pair : batch) {
      const double term = hp.sigma_rule == SigmaRule::kStandard
                              ? 0.5 * (pair.r_plus + pair.r_minus) - b
                              : 0.5 * (pair.r_plus - pair.r_minus) - b;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = dist.sigma[i];
        d_sigma[i] += rate * term * (pair.epsilon[i] * pair.epsilon[i] - s * s) / s;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    next.mu[i] += d_mu[i] / pairs;
    next.sigma[i] = std::max(dist.sigma[i] + d_sigma[i] / pairs, hp.sigma_min);
    if (!std::isfinite(next.mu[i]) || !std::isfinite(next.sigma[i])) {
      std::ostringstream msg;
      msg << "pgpe::update: non-finite mu/sigma at slot " << i;
      throw NumericError(msg.str());
    }
  }
  if (report != nullptr) *report = local;
  return next;
}

std::vector<BatchRecord> run_optimization(const Objective& objective, SearchDistribution& dist,
                                          const Hyperparameters& hp, int batches, Rng& rng) {
  hp.validate();
  require(batches >= 0, "run_optimization: batch count must be non-negative");
  std::vector<BatchRecord> history;
  history.reserve(static_cast<std::size_t>(batches));
  std::vector<RolloutPair> batch(static_cast<std::size_t>(hp.rollouts_per_batch));
  for (int k = 0; k < batches; ++k) {
    BatchRecord rec;
    rec.batch = k + 1;
    for (auto& pair : batch) {
      auto sample = sample_symmetric(dist, rng);
      pair.r_plus = objective(sample.theta_plus);
      pair.r_minus = objective(sample.theta_minus);
      if (!std::isfinite(pair.r_plus) || !std::isfinite(pair.r_minus)) {
        std::ostringstream msg;
        msg << "run_optimization: objective returned a non-finite reward in batch " << rec.batch;
        throw NumericError(msg.str());
      }
      pair.epsilon = std::move(sample.epsilon);
      rec.r_plus.push_back(pair.r_plus);
      rec.r_minus.push_back(pair.r_minus);
    }
    dist = update(dist, batch, hp, &rec.report);
    rec.baseline = dist.baseline;
    rec.max_reward = dist.max_reward;
    rec.mu = dist.mu;
    history.push_back(std::move(rec));
  }
  return history;
}

}  // namespace infodrive::pgpe
