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

#include "infodrive/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>


#include "infodrive/plot.hpp"
#include "infodrive/text.hpp"

namespace infodrive::harness {

namespace fs = std::filesystem;
using text::format_number;

namespace {

template <typename T>
void read_key(const nlohmann::json& doc, const char* key, T& field) {
  if (!doc.contains(key) || doc.at(key).is_null()) return;
  try {
    field = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

pgpe::Hyperparameters pgpe_from_json(const nlohmann::json& doc, pgpe::Hyperparameters hp) {
  read_key(doc, "alpha", hp.alpha);
  read_key(doc, "alpha_sigma", hp.alpha_sigma);
  read_key(doc, "delta", hp.delta);
  read_key(doc, "sigma_init", hp.sigma_init);
  read_key(doc, "m_init", hp.m_init);
  read_key(doc, "rollouts_per_batch", hp.rollouts_per_batch);
  read_key(doc, "sigma_min", hp.sigma_min);
  read_key(doc, "denominator_tolerance", hp.denominator_tolerance);
  std::string rule;
  if (doc.contains("baseline_rule")) {
    read_key(doc, "baseline_rule", rule);
    require(rule == "mean" || rule == "sum", "pgpe.baseline_rule must be 'mean' or 'sum'");
    hp.baseline_rule = rule == "mean" ? pgpe::BaselineRule::kBatchMean : pgpe::BaselineRule::kBatchSum;
  }
  if (doc.contains("sigma_rule")) {
    read_key(doc, "sigma_rule", rule);
    require(rule == "standard" || rule == "difference",
            "pgpe.sigma_rule must be 'standard' or 'difference'");
    hp.sigma_rule = rule == "standard" ? pgpe::SigmaRule::kStandard : pgpe::SigmaRule::kDifference;
  }
  return hp;
}

nlohmann::json pgpe_to_json(const pgpe::Hyperparameters& hp) {
  nlohmann::json j{
      {"alpha", hp.alpha},
      {"alpha_sigma", hp.alpha_sigma > 0.0 ? nlohmann::json(hp.alpha_sigma) : nlohmann::json()},
      {"delta", hp.delta},
      {"sigma_init", hp.sigma_init},
      {"m_init", hp.m_init == std::numeric_limits<double>::lowest() ? nlohmann::json()
                                                                     : nlohmann::json(hp.m_init)},
      {"rollouts_per_batch", hp.rollouts_per_batch},
      {"baseline_rule", hp.baseline_rule == pgpe::BaselineRule::kBatchMean ? "mean" : "sum"},
      {"sigma_rule", hp.sigma_rule == pgpe::SigmaRule::kStandard ? "standard" : "difference"},
      {"sigma_min", hp.sigma_min},
      {"denominator_tolerance", hp.denominator_tolerance}};
  return j;
}


ThresholdStats threshold_stats(const std::vector<const RunRecord*>& runs, double threshold,
                               bool strictly_positive) {
  ThresholdStats stats;
  stats.threshold = threshold;
  std::vector<double> keyed;
  for (const RunRecord* r : runs) {
    std::optional<int> first;
    for (const auto& row : r->rows) {
      const bool hit = strictly_positive ? row.erf_mean > 0.0 : row.erf_mean >= threshold;
      if (hit) {
        first = row.batch;
        break;
      }
    }
    stats.first_batch.push_back(first);
    keyed.push_back(first ? static_cast<double>(*first) : std::numeric_limits<double>::infinity());
  }
  if (!keyed.empty()) {
    std::sort(keyed.begin(), keyed.end());
    const std::size_t n = keyed.size();
    const double median = n % 2 == 1 ? keyed[n / 2] : 0.5 * (keyed[n / 2 - 1] + keyed[n / 2]);
    if (std::isfinite(median)) stats.median = median;
  }
  return stats;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string optional_text(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_summaries(const ExperimentResult& result, const fs::path& dir,
                     const std::vector<double>& thresholds, bool plot_std) {
  std::ostringstream summary;
  summary << "gamma,batch,erf_mean,erf_std,irf_mean,irf_std\n";
  for (const auto& s : result.summaries) {
    for (std::size_t b = 0; b < s.erf_mean.size(); ++b) {
      summary << format_number(s.gamma) << ',' << (b + 1) << ',' << format_number(s.erf_mean[b])
              << ',' << format_number(s.erf_std[b]) << ',' << format_number(s.irf_mean[b]) << ','
              << format_number(s.irf_std[b]) << '\n';
    }
  }
  write_file(dir / "summary.csv", summary.str());

  std::ostringstream th;
  th << "gamma,seed,first_nonzero";
  for (double t : thresholds) th << ",first_ge_" << format_number(t);
  th << '\n';
  for (const auto& s : result.summaries) {
    for (std::size_t r = 0; r < s.seeds.size(); ++r) {
      th << format_number(s.gamma) << ',' << s.seeds[r] << ',';
      const auto& nz = s.first_nonzero.first_batch[r];
      th << (nz ? std::to_string(*nz) : "");
      for (const auto& ts : s.thresholds) {
        th << ',' << (ts.first_batch[r] ? std::to_string(*ts.first_batch[r]) : "");
      }
      th << '\n';
    }
    th << format_number(s.gamma) << ",median," << optional_text(s.first_nonzero.median);
    for (const auto& ts : s.thresholds) th << ',' << optional_text(ts.median);
    th << '\n';
  }
  write_file(dir / "thresholds.csv", th.str());

  plot::Chart erf_all{"mean ERF per gamma", "batch", "ERF", {}};
  plot::Chart irf_all{"mean IRF per gamma", "batch", "IRF", {}};
  for (const auto& s : result.summaries) {
    const std::string label = "gamma=" + format_number(s.gamma);
    plot::Series erf{label, s.erf_mean, plot_std ? s.erf_std : std::vector<double>{}};
    plot::Series irf{label, s.irf_mean, plot_std ? s.irf_std : std::vector<double>{}};
    erf_all.series.push_back({label, s.erf_mean, {}});
    irf_all.series.push_back({label, s.irf_mean, {}});
    write_file(dir / ("curves_" + format_number(s.gamma) + ".svg"),
               plot::render_svg({{"ERF, " + label, "batch", "ERF", {erf}},
                                 {"IRF, " + label, "batch", "IRF", {irf}}}));
  }
  write_file(dir / "curves_all.svg", plot::render_svg({erf_all, irf_all}));
}

}  // namespace

EnvKind parse_env_kind(const std::string& name) {
  if (name == "cartpole") return EnvKind::kCartPole;
  if (name == "locomotion") return EnvKind::kLocomotion;
  if (name == "rescue") return EnvKind::kRescue;
  throw ConfigError("unknown environment '" + name + "' (expected cartpole, locomotion or rescue)");
}

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::kCartPole:
      return "cartpole";
    case EnvKind::kLocomotion:
      return "locomotion";
    case EnvKind::kRescue:
      return "rescue";
  }
  return "cartpole";
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> seeds(100);
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  return seeds;
}

ExperimentConfig ExperimentConfig::defaults_for(EnvKind env) {
  ExperimentConfig c;
  c.environment = env;
  switch (env) {
    case EnvKind::kCartPole:
      c.controller = "B";
      c.steps = 2000;
      c.batches = 10000;
      c.pgpe.alpha = 0.1;
      c.pgpe.sigma_init = 5.0;
      c.pgpe.rollouts_per_batch = 2;
      c.irf_spec.mode = reward::IrfSpec::Mode::kSingleChannel;
      c.irf_spec.channel = 2;
      c.irf_spec.bins = 30;
      c.reference_reward = 2.0;
      break;
    case EnvKind::kLocomotion:
      c.controller = "cpg";
      c.steps = 1000;
      c.batches = 250;
      c.pgpe.alpha = 0.1;
      c.pgpe.sigma_init = 2.0;
      c.pgpe.rollouts_per_batch = 2;
      c.irf_spec.mode = reward::IrfSpec::Mode::kPairwise;
      c.reference_reward = 10.0;
      break;
    case EnvKind::kRescue:
      c.controller = "one-layer";
      c.steps = 1250;
      c.batches = 5000;
      c.pgpe.alpha = 0.5;
      c.pgpe.alpha_sigma = 0.05;
      c.pgpe.sigma_init = 2.0;
      c.pgpe.rollouts_per_batch = 1;
      c.irf_spec.mode = reward::IrfSpec::Mode::kPairwise;
      c.reference_reward = 20.0;
      c.thresholds = {5.0, 20.0};
      break;
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  require(doc.is_object(), "config: top level must be an object");
  require(doc.contains("environment"), "config: 'environment' is required");
  const auto& env = doc.at("environment");
  std::string kind;
  if (env.is_string()) {
    kind = env.get<std::string>();
  } else {
    require(env.is_object() && env.contains("kind"), "config: environment needs a 'kind'");
    kind = env.at("kind").get<std::string>();
  }
  ExperimentConfig c = defaults_for(parse_env_kind(kind));
  if (env.is_object()) {
    if (env.contains("cartpole")) c.cartpole = envs::CartPoleParams::from_json(env.at("cartpole"));
    if (env.contains("crawler")) c.crawler = envs::CrawlerParams::from_json(env.at("crawler"));
    read_key(env, "trap_radius", c.trap.radius);
    read_key(env, "wall_height", c.trap.wall_height);
  }
  read_key(doc, "id", c.id);
  read_key(doc, "controller", c.controller);
  if (doc.contains("irf")) c.irf = reward::parse_irf_kind(doc.at("irf").get<std::string>());
  read_key(doc, "gammas", c.gammas);
  if (doc.contains("pgpe")) c.pgpe = pgpe_from_json(doc.at("pgpe"), c.pgpe);
  read_key(doc, "steps", c.steps);
  read_key(doc, "batches", c.batches);
  read_key(doc, "runs", c.runs);
  read_key(doc, "seeds", c.seeds);
  if (doc.contains("irf_spec")) {
    const auto& s = doc.at("irf_spec");
    read_key(s, "channel", c.irf_spec.channel);
    read_key(s, "bins", c.irf_spec.bins);
    read_key(s, "pair_channels", c.irf_spec.pair_channels);
    read_key(s, "pairs", c.irf_spec.pairs);
    read_key(s, "pair_bins", c.irf_spec.pair_bins);
  }
  read_key(doc, "reference_reward", c.reference_reward);
  read_key(doc, "thresholds", c.thresholds);
  read_key(doc, "plot_std", c.plot_std);
  read_key(doc, "output", c.output_dir);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return from_json(doc);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json env{{"kind", harness::to_string(environment)}};
  if (environment == EnvKind::kCartPole) {
    env["cartpole"] = cartpole.to_json();
  } else {
    env["crawler"] = crawler.to_json();
    env["trap_radius"] = trap.radius;
    env["wall_height"] = trap.wall_height;
  }
  return {{"id", id},
          {"environment", env},
          {"controller", controller},
          {"irf", reward::to_string(irf)},
          {"gammas", gammas},
          {"pgpe", pgpe_to_json(pgpe)},
          {"steps", steps},
          {"batches", batches},
          {"runs", runs},
          {"seeds", seeds},
          {"irf_spec",
           {{"mode", irf_spec.mode == reward::IrfSpec::Mode::kPairwise ? "pairwise" : "single-channel"},
            {"channel", irf_spec.channel},
            {"bins", irf_spec.bins},
            {"pair_channels", irf_spec.pair_channels},
            {"pairs", irf_spec.pairs},
            {"pair_bins", irf_spec.pair_bins}}},
          {"reference_reward", reference_reward},
          {"thresholds", thresholds},
          {"plot_std", plot_std},
          {"output", output_dir}};
}

void ExperimentConfig::validate() const {
  require(!id.empty(), "config: id must not be empty");
  pgpe.validate();
  require(steps >= 2, "config: steps must be >= 2");
  require(batches >= 0, "config: batches must be >= 0");
  require(runs >= 0, "config: runs must be >= 0");
  require(seeds.size() >= static_cast<std::size_t>(runs),
          "config: fewer seeds (" + std::to_string(seeds.size()) + ") than runs (" +
              std::to_string(runs) + ")");
  require(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == seeds.size(),
          "config: seeds must be distinct");
  require(!gammas.empty(), "config: gamma list is empty");
  for (double g : gammas) require(g >= 0.0 && std::isfinite(g), "config: gammas must be >= 0");
  require(reference_reward > 0.0, "config: reference_reward must be positive");
  cartpole.validate();
  crawler.validate();
  require(trap.radius > 0.0 && trap.wall_height >= 0.0, "config: invalid trap geometry");
  if (irf_spec.mode == reward::IrfSpec::Mode::kSingleChannel) {
    require(irf_spec.bins >= 2, "config: irf_spec.bins must be >= 2");
  } else {
    require(irf_spec.pair_bins >= 2, "config: irf_spec.pair_bins must be >= 2");
    require(irf_spec.pair_channels >= 2 && irf_spec.pair_channels <= envs::kCrawlerSensors,
            "config: irf_spec.pair_channels out of range");
    require(irf_spec.pairs >= 1 &&
                irf_spec.pairs <= irf_spec.pair_channels * (irf_spec.pair_channels - 1) / 2,
            "config: irf_spec.pairs exceeds the number of distinct pairs");
  }
  make_topology();
}

double ExperimentConfig::beta_for(double gamma) const {
  return environment == EnvKind::kCartPole ? reward::beta(gamma, steps, reference_reward)
                                           : reward::beta(gamma, 1, reference_reward);
}

std::shared_ptr<const policy::NetworkTopology> ExperimentConfig::make_topology() const {
  switch (environment) {
    case EnvKind::kCartPole:
      return std::make_shared<const policy::NetworkTopology>(
          policy::build_cartpole_controller(policy::parse_cartpole_variant(controller)));
    case EnvKind::kLocomotion:
      require(controller == "cpg", "config: locomotion supports controller 'cpg'");
      return std::make_shared<const policy::NetworkTopology>(policy::build_hexapod_cpg());
    case EnvKind::kRescue:
      require(controller == "one-layer", "config: rescue supports controller 'one-layer'");
      return std::make_shared<const policy::NetworkTopology>(policy::build_rescue_controller());
  }
  throw ConfigError("config: unknown environment");
}

std::uint64_t run_seed(const std::string& experiment_id, std::size_t gamma_index,
                       std::uint64_t seed) {
  return combine_seed(combine_seed(fnv1a(experiment_id), gamma_index), seed);
}

reward::RewardBreakdown evaluate_parameters(const ExperimentConfig& config,
                                            policy::NeuralPolicy& controller, double beta,
                                            std::span<const double> params,
                                            std::uint64_t episode_seed) {
  controller.bind_parameters(params);
  envs::EpisodeResult episode;
  switch (config.environment) {
    case EnvKind::kCartPole:
      episode = envs::run_cartpole_episode(config.cartpole, controller, config.steps);
      break;
    case EnvKind::kLocomotion:
      episode = envs::run_crawler_episode(config.crawler, envs::CrawlerTask::kLocomotion,
                                          config.trap, controller, config.steps, episode_seed);
      break;
    case EnvKind::kRescue:
      episode = envs::run_crawler_episode(config.crawler, envs::CrawlerTask::kRescue, config.trap,
                                          controller, config.steps, episode_seed);
      break;
  }
  double irf = 0.0;
  if (config.irf != reward::IrfKind::kNone) {
    if (config.irf_spec.mode == reward::IrfSpec::Mode::kPairwise) {
      Rng pairing_rng(combine_seed(episode_seed, 0x9a1e5ULL));
      const auto pairing =
          info::sample_pairings(config.irf_spec.pair_channels, config.irf_spec.pairs, pairing_rng);
      irf = reward::episode_irf(episode.trace, config.irf, config.irf_spec, &pairing);
    } else {
      irf = reward::episode_irf(episode.trace, config.irf, config.irf_spec);
    }
  }
  return reward::combine(episode.erf_total, irf, beta);
}

RunRecord run_single(const ExperimentConfig& config, std::size_t gamma_index, std::uint64_t seed) {
  RunRecord rec;
  rec.gamma_index = gamma_index;
  rec.gamma = config.gammas.at(gamma_index);
  rec.seed = seed;
  try {
    policy::NeuralPolicy controller(config.make_topology());
    const double beta = config.beta_for(rec.gamma);
    const std::uint64_t stream = run_seed(config.id, gamma_index, seed);
    Rng rng(stream);
    const auto& hp = config.pgpe;
    auto dist = pgpe::SearchDistribution::initial(
        static_cast<std::size_t>(controller.parameter_count()), hp);
    const auto rollouts = static_cast<std::size_t>(hp.rollouts_per_batch);
    std::vector<pgpe::RolloutPair> batch(rollouts);
    rec.rows.reserve(static_cast<std::size_t>(config.batches));

    for (int k = 0; k < config.batches; ++k) {
      double erf = 0.0, irf = 0.0, combined = 0.0;
      for (std::size_t j = 0; j < rollouts; ++j) {
        auto sample = pgpe::sample_symmetric(dist, rng);
        const std::uint64_t eval = (static_cast<std::uint64_t>(k) * rollouts + j) * 2;
        const auto plus =
            evaluate_parameters(config, controller, beta, sample.theta_plus, combine_seed(stream, eval));
        const auto minus = evaluate_parameters(config, controller, beta, sample.theta_minus,
                                               combine_seed(stream, eval + 1));
        batch[j].epsilon = std::move(sample.epsilon);
        batch[j].r_plus = plus.combined;
        batch[j].r_minus = minus.combined;
        erf += plus.erf_total + minus.erf_total;
        irf += plus.irf_value + minus.irf_value;
        combined += plus.combined + minus.combined;
      }
      pgpe::UpdateReport report;
      dist = pgpe::update(dist, batch, hp, &report);
      rec.skipped_mu_pairs += report.skipped_mu_pairs;
      rec.skipped_sigma_updates += report.skipped_sigma ? 1 : 0;
      const double evals = 2.0 * static_cast<double>(rollouts);
      rec.rows.push_back({k + 1, erf / evals, irf / evals, combined / evals, dist.baseline,
                          dist.max_reward});
    }
    rec.final_mu = dist.mu;
  } catch (const std::exception& e) {
    rec.aborted = true;
    rec.diagnostic = e.what();
  }
  return rec;
}

SweepSummary summarize(const std::vector<RunRecord>& records, const std::vector<double>& thresholds) {
  SweepSummary s;
  std::vector<const RunRecord*> runs;
  for (const auto& r : records) {
    if (!r.aborted) runs.push_back(&r);
  }
  s.runs = runs.size();
  if (!records.empty()) s.gamma = records.front().gamma;
  for (const RunRecord* r : runs) s.seeds.push_back(r->seed);
  if (!runs.empty()) {
    const std::size_t batches = runs.front()->rows.size();
    for (const RunRecord* r : runs) {
      require(r->rows.size() == batches, "summarize: records have inconsistent batch counts");
    }
    const double n = static_cast<double>(runs.size());
    for (std::size_t b = 0; b < batches; ++b) {
      double se = 0.0, si = 0.0;
      for (const RunRecord* r : runs) {
        se += r->rows[b].erf_mean;
        si += r->rows[b].irf;
      }
      const double me = se / n;
      const double mi = si / n;
      double ve = 0.0, vi = 0.0;
      for (const RunRecord* r : runs) {
        ve += (r->rows[b].erf_mean - me) * (r->rows[b].erf_mean - me);
        vi += (r->rows[b].irf - mi) * (r->rows[b].irf - mi);
      }
      s.erf_mean.push_back(me);
      s.irf_mean.push_back(mi);
      s.erf_std.push_back(std::sqrt(ve / n));
      s.irf_std.push_back(std::sqrt(vi / n));
    }
  }
  s.first_nonzero = threshold_stats(runs, 0.0, true);
  for (double t : thresholds) s.thresholds.push_back(threshold_stats(runs, t, false));
  return s;
}

namespace {

ExperimentResult assemble(const ExperimentConfig& config, std::vector<RunRecord> records) {
  ExperimentResult result;
  result.records = std::move(records);
  if (config.runs == 0) return result;
  const auto runs = static_cast<std::size_t>(config.runs);
  for (std::size_t g = 0; g < config.gammas.size(); ++g) {
    std::vector<RunRecord> group(result.records.begin() + static_cast<std::ptrdiff_t>(g * runs),
                                 result.records.begin() + static_cast<std::ptrdiff_t>((g + 1) * runs));
    auto summary = summarize(group, config.thresholds);
    summary.gamma = config.gammas[g];
    result.summaries.push_back(std::move(summary));
  }
  for (const auto& r : result.records) result.any_aborted = result.any_aborted || r.aborted;
  return result;
}

}  // namespace

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunRecord> records;
  for (std::size_t g = 0; g < config.gammas.size(); ++g) {
    for (int r = 0; r < config.runs; ++r) {
      records.push_back(run_single(config, g, config.seeds[static_cast<std::size_t>(r)]));
    }
  }
  return assemble(config, std::move(records));
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();
  require(workers >= 1, "run_experiment: workers must be >= 1");
  const auto runs = static_cast<std::size_t>(config.runs);
  const auto tasks = static_cast<std::ptrdiff_t>(config.gammas.size() * runs);
  std::vector<RunRecord> records(static_cast<std::size_t>(tasks));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t task = 0; task < tasks; ++task) {
    const auto t = static_cast<std::size_t>(task);
    records[t] = run_single(config, t / runs, config.seeds[t % runs]);
  }
  return assemble(config, std::move(records));
}

std::string run_file_stem(double gamma, std::uint64_t seed) {
  return "run_" + format_number(gamma) + "_" + std::to_string(seed);
}

void emit_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                  const fs::path& dir) {
  if (result.records.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + dir.string() + "'");
  }
  for (const auto& rec : result.records) {
    const auto stem = run_file_stem(rec.gamma, rec.seed);
    if (rec.aborted) {
      write_file(dir / (stem + ".error.txt"), rec.diagnostic + "\n");
      continue;
    }
    std::ostringstream csv;
    csv << "batch,erf_mean,irf,combined,baseline,max\n";
    for (const auto& row : rec.rows) {
      csv << row.batch << ',' << format_number(row.erf_mean) << ',' << format_number(row.irf) << ','
          << format_number(row.combined) << ',' << format_number(row.baseline) << ','
          << format_number(row.max) << '\n';
    }
    write_file(dir / (stem + ".csv"), csv.str());
    std::ostringstream mu;
    for (double v : rec.final_mu) mu << format_number(v) << '\n';
    write_file(dir / ("mu_" + format_number(rec.gamma) + "_" + std::to_string(rec.seed) + ".txt"),
               mu.str());
  }
  write_summaries(result, dir, config.thresholds, config.plot_std);

  nlohmann::json provenance;
  provenance["config"] = config.to_json();
  provenance["seeds_used"] = std::vector<std::uint64_t>(
      config.seeds.begin(), config.seeds.begin() + static_cast<std::ptrdiff_t>(config.runs));
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const auto& rec : result.records) {
    diagnostics.push_back({{"gamma", rec.gamma},
                           {"seed", rec.seed},
                           {"aborted", rec.aborted},
                           {"skipped_mu_pairs", rec.skipped_mu_pairs},
                           {"skipped_sigma_updates", rec.skipped_sigma_updates}});
  }
  provenance["runs"] = diagnostics;
  write_file(dir / "provenance.json", provenance.dump(2) + "\n");
}

ExperimentResult resummarize_directory(const fs::path& dir) {
  const auto prov_path = dir / "provenance.json";
  std::ifstream in(prov_path);
  if (!in) throw ConfigError("summarize: missing '" + prov_path.string() + "'");
  nlohmann::json prov;
  try {
    prov = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("summarize: provenance.json: ") + e.what());
  }
  const auto config = ExperimentConfig::from_json(prov.at("config"));

  std::map<std::string, std::size_t> gamma_index;
  for (std::size_t g = 0; g < config.gammas.size(); ++g) {
    gamma_index[format_number(config.gammas[g])] = g;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("run_", 0) == 0 && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::vector<RunRecord>> groups(config.gammas.size());
  for (const auto& path : files) {
    const auto stem = path.stem().string().substr(4);
    const auto cut = stem.rfind('_');
    require(cut != std::string::npos, "summarize: bad run file name '" + path.string() + "'");
    const auto it = gamma_index.find(stem.substr(0, cut));
    require(it != gamma_index.end(), "summarize: gamma of '" + path.string() + "' not in config");
    RunRecord rec;
    rec.gamma = config.gammas[it->second];
    rec.gamma_index = it->second;
    rec.seed = std::stoull(stem.substr(cut + 1));
    std::ifstream csv(path);
    std::string line;
    std::getline(csv, line);
    require(line == "batch,erf_mean,irf,combined,baseline,max",
            "summarize: unexpected header in '" + path.string() + "'");
    while (std::getline(csv, line)) {
      if (line.empty()) continue;
      const auto cells = text::split(line, ',');
      require(cells.size() == 6, "summarize: malformed row in '" + path.string() + "'");
      rec.rows.push_back({std::stoi(cells[0]), text::parse_number(cells[1]),
                          text::parse_number(cells[2]), text::parse_number(cells[3]),
                          text::parse_number(cells[4]), text::parse_number(cells[5])});
    }
    groups[it->second].push_back(std::move(rec));
  }

  // Order runs within a gamma by the configured seed order.
  std::map<std::uint64_t, std::size_t> seed_order;
  for (std::size_t i = 0; i < config.seeds.size(); ++i) seed_order[config.seeds[i]] = i;
  ExperimentResult result;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& group = groups[g];
    std::sort(group.begin(), group.end(), [&](const RunRecord& a, const RunRecord& b) {
      return seed_order[a.seed] < seed_order[b.seed];
    });
    auto summary = summarize(group, config.thresholds);
    summary.gamma = config.gammas[g];
    result.summaries.push_back(std::move(summary));
    for (auto& r : group) result.records.push_back(std::move(r));
  }
  write_summaries(result, dir, config.thresholds, config.plot_std);
  return result;
}

}  // namespace infodrive::harness
