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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "infodrive/harness.hpp"

using namespace infodrive;
using namespace infodrive::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_count(const fs::path& p) {
  const auto text = slurp(p);
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("infodrive_" + name)) {
    fs::remove_all(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

ExperimentConfig small_cartpole(int batches, int runs) {
  auto c = ExperimentConfig::defaults_for(EnvKind::kCartPole);
  c.id = "unit-cartpole";
  c.steps = 200;
  c.batches = batches;
  c.runs = runs;
  c.irf = reward::IrfKind::kEntropy;
  return c;
}

ExperimentConfig small_rescue(int batches, int runs) {
  auto c = ExperimentConfig::defaults_for(EnvKind::kRescue);
  c.id = "unit-rescue";
  c.steps = 150;
  c.batches = batches;
  c.runs = runs;
  c.irf = reward::IrfKind::kPredictiveInformation;
  c.gammas = {0.0, 0.05};
  return c;
}

RunRecord curve(std::vector<double> erf, std::uint64_t seed = 1) {
  RunRecord r;
  r.seed = seed;
  for (std::size_t b = 0; b < erf.size(); ++b) {
    r.rows.push_back({static_cast<int>(b + 1), erf[b], 0.1 * erf[b], erf[b], 0.0, 0.0});
  }
  return r;
}

}  // namespace

TEST_CASE("default configurations") {
  const auto cp = ExperimentConfig::defaults_for(EnvKind::kCartPole);
  CHECK(cp.controller == "B");
  CHECK(cp.steps == 2000);
  CHECK(cp.batches == 10000);
  CHECK(cp.pgpe.sigma_init == 5.0);
  CHECK(cp.beta_for(0.0125) == 50.0);
  CHECK(cp.beta_for(0.05) == 200.0);

  const auto rescue = ExperimentConfig::defaults_for(EnvKind::kRescue);
  CHECK(rescue.steps == 1250);
  CHECK(rescue.pgpe.alpha == 0.5);
  CHECK(rescue.pgpe.effective_alpha_sigma() == 0.05);
  CHECK(rescue.pgpe.rollouts_per_batch == 1);
  CHECK(rescue.thresholds == std::vector<double>{5.0, 20.0});
  CHECK(rescue.beta_for(0.01) == doctest::Approx(0.2));
  CHECK(rescue.make_topology()->slot_count() == 156);

  const auto loco = ExperimentConfig::defaults_for(EnvKind::kLocomotion);
  CHECK(loco.make_topology()->slot_count() == 32);
  CHECK(default_seeds().size() == 100);
}

TEST_CASE("config JSON keeps defaults for missing keys and round-trips") {
  const auto doc = nlohmann::json::parse(R"({
    "id": "partial",
    "environment": {"kind": "rescue", "wall_height": 0.1},
    "irf": "entropy",
    "gammas": [0, 0.0005, 0.01, 0.05, 0.25],
    "runs": 3,
    "pgpe": {"sigma_rule": "difference"}
  })");
  const auto c = ExperimentConfig::from_json(doc);
  CHECK(c.id == "partial");
  CHECK(c.environment == EnvKind::kRescue);
  CHECK(c.trap.wall_height == 0.1);
  CHECK(c.trap.radius == 2.0);
  CHECK(c.steps == 1250);
  CHECK(c.gammas.size() == 5);
  CHECK(c.pgpe.sigma_rule == pgpe::SigmaRule::kDifference);
  CHECK(c.pgpe.alpha == 0.5);

  const auto again = ExperimentConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
}

TEST_CASE("config validation") {
  auto bad = [](const char* text) { return ExperimentConfig::from_json(nlohmann::json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"environment": "pendulum"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"id": "x"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "gammas": [-0.1]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "seeds": [1, 1], "runs": 2})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "seeds": [1, 2], "runs": 3})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "controller": "Z"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "rescue", "controller": "B"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "steps": "long"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"environment": "cartpole", "pgpe": {"alpha": 2}})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("gamma lists become one branch each") {
  auto c = small_cartpole(2, 1);
  c.gammas = {0.0, 0.0125, 0.025, 0.0375, 0.05};
  const auto result = run_experiment(c, 2);
  CHECK(result.summaries.size() == 5);
  CHECK(result.records.size() == 5);
  for (std::size_t g = 0; g < 5; ++g) CHECK(result.summaries[g].gamma == c.gammas[g]);
}

TEST_CASE("emitted files for a small sweep") {
  ScratchDir dir("emit");
  auto c = small_cartpole(10, 2);
  const auto result = run_experiment(c, 2);
  emit_outputs(result, c, dir.path);
  for (std::uint64_t seed : {1, 2}) {
    const auto csv = dir.path / (run_file_stem(0.0, seed) + ".csv");
    REQUIRE(fs::exists(csv));
    CHECK(line_count(csv) == 11);
    CHECK(slurp(csv).rfind("batch,erf_mean,irf,combined,baseline,max\n", 0) == 0);
    CHECK(fs::exists(dir.path / ("mu_0_" + std::to_string(seed) + ".txt")));
  }
  CHECK(line_count(dir.path / "summary.csv") == 11);
  CHECK(slurp(dir.path / "summary.csv").rfind("gamma,batch,erf_mean,erf_std,irf_mean,irf_std\n", 0) ==
        0);
  CHECK(line_count(dir.path / "thresholds.csv") == 4);
  CHECK(fs::file_size(dir.path / "curves_0.svg") > 0);
  CHECK(fs::file_size(dir.path / "curves_all.svg") > 0);

  const auto prov = nlohmann::json::parse(slurp(dir.path / "provenance.json"));
  CHECK(prov.at("seeds_used") == nlohmann::json::array({1, 2}));
  CHECK(prov.at("config").at("pgpe").at("sigma_init") == 5.0);
  CHECK(prov.at("runs").size() == 2);
}

TEST_CASE("reruns produce identical bytes") {
  ScratchDir a("rerun_a");
  ScratchDir b("rerun_b");
  auto c = small_rescue(6, 2);
  emit_outputs(run_experiment(c, 1), c, a.path);
  emit_outputs(run_experiment(c, 3), c, b.path);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const auto other = b.path / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
    ++compared;
  }
  CHECK(compared > 8);
}

TEST_CASE("parallel runs match the serial reference") {
  auto c = small_rescue(5, 3);
  const auto serial = run_experiment_serial(c);
  const auto parallel = run_experiment(c, 4);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    const auto& s = serial.records[i];
    const auto& p = parallel.records[i];
    CHECK(s.seed == p.seed);
    CHECK(s.gamma == p.gamma);
    CHECK(s.final_mu == p.final_mu);
    for (std::size_t b = 0; b < s.rows.size(); ++b) {
      CHECK(s.rows[b].combined == p.rows[b].combined);
      CHECK(s.rows[b].irf == p.rows[b].irf);
    }
  }
}

TEST_CASE("dropping a seed leaves the other runs untouched") {
  auto full = small_cartpole(8, 3);
  full.seeds = {11, 12, 13};
  auto reduced = full;
  reduced.seeds = {11, 13};
  reduced.runs = 2;
  const auto a = run_experiment(full, 1);
  const auto b = run_experiment(reduced, 1);
  CHECK(a.records[0].final_mu == b.records[0].final_mu);
  CHECK(a.records[2].final_mu == b.records[1].final_mu);
  CHECK(a.records[0].final_mu != a.records[1].final_mu);
}

TEST_CASE("zero runs produce nothing") {
  ScratchDir dir("empty");
  auto c = small_cartpole(5, 0);
  const auto result = run_experiment(c, 2);
  CHECK(result.records.empty());
  CHECK(result.summaries.empty());
  emit_outputs(result, c, dir.path);
  CHECK_FALSE(fs::exists(dir.path));
}

TEST_CASE("summaries") {
  const auto single = summarize({curve({0.0, 1.0, 7.0})}, {});
  REQUIRE(single.erf_std.size() == 3);
  for (double s : single.erf_std) CHECK(s == 0.0);

  const auto mirrored = summarize({curve({1.0, -2.0, 3.5}, 1), curve({-1.0, 2.0, -3.5}, 2)}, {});
  for (double m : mirrored.erf_mean) CHECK(m == 0.0);
  CHECK(mirrored.erf_std[1] == 2.0);

  std::vector<double> rising(60, 0.0);
  for (std::size_t b = 36; b < rising.size(); ++b) rising[b] = 6.0;
  rising[10] = 0.5;
  const auto th = summarize({curve(rising)}, {5.0, 20.0});
  CHECK(th.thresholds[0].first_batch[0] == 37);
  CHECK(th.thresholds[0].median == 37.0);
  CHECK_FALSE(th.thresholds[1].first_batch[0].has_value());
  CHECK_FALSE(th.thresholds[1].median.has_value());
  CHECK(th.first_nonzero.first_batch[0] == 11);

  // Unreached runs rank above every reached one.
  const auto mixed =
      summarize({curve(rising, 1), curve(std::vector<double>(60, 0.0), 2), curve(rising, 3)}, {5.0});
  CHECK(mixed.thresholds[0].median == 37.0);

  CHECK_THROWS_AS(summarize({curve({1.0, 2.0}), curve({1.0})}, {}), ConfigError);
}

TEST_CASE("a run that blows up is recorded as aborted") {
  ScratchDir dir("abort");
  auto c = small_cartpole(3, 2);
  c.cartpole.dt = 1e200;
  const auto result = run_experiment(c, 1);
  CHECK(result.any_aborted);
  CHECK(result.records[0].aborted);
  CHECK_FALSE(result.records[0].diagnostic.empty());
  emit_outputs(result, c, dir.path);
  CHECK(fs::exists(dir.path / (run_file_stem(0.0, 1) + ".error.txt")));
}

TEST_CASE("gamma zero matches an optimizer run on the bare extrinsic reward") {
  auto c = small_cartpole(25, 1);
  c.irf = reward::IrfKind::kPredictiveInformation;
  const auto rec = run_single(c, 0, 7);

  policy::NeuralPolicy controller(c.make_topology());
  auto dist = pgpe::SearchDistribution::initial(25, c.pgpe);
  Rng rng(run_seed(c.id, 0, 7));
  const auto history = pgpe::run_optimization(
      [&](std::span<const double> theta) {
        controller.bind_parameters(theta);
        return envs::run_cartpole_episode(c.cartpole, controller, c.steps).erf_total;
      },
      dist, c.pgpe, c.batches, rng);
  CHECK(dist.mu == rec.final_mu);
  for (std::size_t b = 0; b < history.size(); ++b) {
    CHECK(history[b].baseline == rec.rows[b].baseline);
    CHECK(history[b].max_reward == rec.rows[b].max);
  }
}

TEST_CASE("run seeds depend on id, gamma index and seed") {
  CHECK(run_seed("a", 0, 1) == run_seed("a", 0, 1));
  CHECK(run_seed("a", 0, 1) != run_seed("b", 0, 1));
  CHECK(run_seed("a", 0, 1) != run_seed("a", 1, 1));
  CHECK(run_seed("a", 0, 1) != run_seed("a", 0, 2));
}

TEST_CASE("summaries can be rebuilt from the run files") {
  ScratchDir dir("resummarize");
  auto c = small_rescue(7, 2);
  emit_outputs(run_experiment(c, 2), c, dir.path);
  const auto summary = slurp(dir.path / "summary.csv");
  const auto thresholds = slurp(dir.path / "thresholds.csv");
  fs::remove(dir.path / "summary.csv");
  fs::remove(dir.path / "thresholds.csv");
  const auto rebuilt = resummarize_directory(dir.path);
  CHECK(rebuilt.summaries.size() == 2);
  CHECK(slurp(dir.path / "summary.csv") == summary);
  CHECK(slurp(dir.path / "thresholds.csv") == thresholds);
  CHECK_THROWS_AS(resummarize_directory(dir.path / "missing"), ConfigError);
}
