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

// Declarative gamma-sweep experiments: config loading, seeded runs,
// aggregation and persisted artifacts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infodrive/envs.hpp"
#include "infodrive/pgpe.hpp"
#include "infodrive/policy.hpp"
#include "infodrive/reward.hpp"

namespace infodrive::harness {

enum class EnvKind { kCartPole, kLocomotion, kRescue };

EnvKind parse_env_kind(const std::string& name);
std::string to_string(EnvKind kind);

/// Seeds 1..100.
std::vector<std::uint64_t> default_seeds();

struct ExperimentConfig {
  std::string id = "experiment";
  EnvKind environment = EnvKind::kCartPole;
  envs::CartPoleParams cartpole;
  envs::CrawlerParams crawler;
  envs::TrapParams trap;
  /// "A".."D" for cart-pole, "cpg" for locomotion, "one-layer" for rescue.
  std::string controller = "B";
  reward::IrfKind irf = reward::IrfKind::kNone;
  std::vector<double> gammas = {0.0};
  pgpe::Hyperparameters pgpe;
  int steps = 2000;
  int batches = 10000;
  int runs = 100;
  std::vector<std::uint64_t> seeds = default_seeds();
  reward::IrfSpec irf_spec;
  /// Per-step ERF maximum for cart-pole, reference terminal reward otherwise.
  double reference_reward = 2.0;
  std::vector<double> thresholds;
  /// Draw standard-deviation bands in the learning-curve images.
  bool plot_std = true;
  std::string output_dir = "out";

  /// Environment-specific defaults (controller, T, B, PGPE settings, IRF
  /// channels, reference reward, thresholds).
  static ExperimentConfig defaults_for(EnvKind env);
  /// Keys missing from `doc` keep the environment's defaults.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Full echo of every field, defaults included.
  nlohmann::json to_json() const;
  void validate() const;

  /// beta(gamma) for this experiment.
  double beta_for(double gamma) const;
  std::shared_ptr<const policy::NetworkTopology> make_topology() const;
};

/// Stream seed of one run: hash of (experiment id, gamma index, seed entry).
std::uint64_t run_seed(const std::string& experiment_id, std::size_t gamma_index,
                       std::uint64_t seed);

struct BatchRow {
  int batch = 0;
  double erf_mean = 0.0;
  double irf = 0.0;
  double combined = 0.0;
  double baseline = 0.0;
  double max = 0.0;
};

struct RunRecord {
  double gamma = 0.0;
  std::size_t gamma_index = 0;
  std::uint64_t seed = 0;
  std::vector<BatchRow> rows;
  std::vector<double> final_mu;
  bool aborted = false;
  std::string diagnostic;
  int skipped_mu_pairs = 0;
  int skipped_sigma_updates = 0;
};

/// One reward evaluation of a parameter vector.
reward::RewardBreakdown evaluate_parameters(const ExperimentConfig& config,
                                            policy::NeuralPolicy& controller, double beta,
                                            std::span<const double> params,
                                            std::uint64_t episode_seed);

/// Executes a single (gamma, seed) run. Never throws for numeric failures;
/// they mark the record aborted.
RunRecord run_single(const ExperimentConfig& config, std::size_t gamma_index, std::uint64_t seed);

struct ThresholdStats {
  double threshold = 0.0;
  /// Per run: first batch whose mean ERF reaches the threshold.
  std::vector<std::optional<int>> first_batch;
  /// Unreached runs count as +infinity; nullopt when the median is unreached.
  std::optional<double> median;
};

struct SweepSummary {
  double gamma = 0.0;
  std::size_t runs = 0;
  std::vector<double> erf_mean, erf_std, irf_mean, irf_std;
  std::vector<std::uint64_t> seeds;
  /// First batch with a nonzero mean ERF, per run.
  ThresholdStats first_nonzero;
  std::vector<ThresholdStats> thresholds;
};

/// Per-batch mean and (population) standard deviation across runs plus
/// threshold statistics. Records must share one batch count.
SweepSummary summarize(const std::vector<RunRecord>& records, const std::vector<double>& thresholds);

struct ExperimentResult {
  std::vector<RunRecord> records;  // gamma-major, then seed order
  std::vector<SweepSummary> summaries;
  bool any_aborted = false;
};

/// Runs every (gamma, seed) pair on a pool of `workers` OpenMP threads.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers);
/// Serial reference for run_experiment.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

/// Writes run CSVs, summary.csv, thresholds.csv, learning-curve SVGs and
/// provenance.json into `dir`.
void emit_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& dir);

/// Recomputes summary.csv/thresholds.csv/plots from the run CSVs in `dir`.
ExperimentResult resummarize_directory(const std::filesystem::path& dir);

std::string run_file_stem(double gamma, std::uint64_t seed);

}  // namespace infodrive::harness
