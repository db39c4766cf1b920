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


// Command-line front end: run experiments, inspect traces, re-aggregate
// stored runs.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infodrive/harness.hpp"
#include "infodrive/infotheory.hpp"
#include "infodrive/text.hpp"
#include "infodrive/trace_io.hpp"

using namespace infodrive;

namespace {

std::string median_text(const std::optional<double>& median) {
  return median ? text::format_number(*median) : std::string("unreached");
}

void print_summaries(const harness::ExperimentResult& result,
                     const std::vector<double>& thresholds) {
  for (const auto& s : result.summaries) {
    std::printf("gamma %-8s runs %-4zu final ERF mean %-12.6g first nonzero (median) %s",
                text::format_number(s.gamma).c_str(), s.runs,
                s.erf_mean.empty() ? 0.0 : s.erf_mean.back(),
                median_text(s.first_nonzero.median).c_str());
    for (std::size_t t = 0; t < s.thresholds.size() && t < thresholds.size(); ++t) {
      std::printf("  ERF>=%s (median) %s", text::format_number(thresholds[t]).c_str(),
                  median_text(s.thresholds[t].median).c_str());
    }
    std::printf("\n");
  }
}

int count_aborted(const harness::ExperimentResult& result) {
  int aborted = 0;
  for (const auto& r : result.records) {
    if (r.aborted) {
      ++aborted;
      std::fprintf(stderr, "run gamma=%s seed=%llu aborted: %s\n",
                   text::format_number(r.gamma).c_str(),
                   static_cast<unsigned long long>(r.seed), r.diagnostic.c_str());
    }
  }
  return aborted;
}

struct RunOptions {
  std::string config_path;
  int workers = 0;
  std::string output;
  std::optional<int> runs;
  std::optional<int> batches;
};

int cmd_run(const RunOptions& opt) {
  auto config = harness::ExperimentConfig::load(opt.config_path);
  if (opt.runs) config.runs = *opt.runs;
  if (opt.batches) config.batches = *opt.batches;
  if (!opt.output.empty()) config.output_dir = opt.output;
  config.validate();

  const int workers = opt.workers > 0 ? opt.workers : 1;
  std::printf("experiment %s: %zu gamma value(s) x %d run(s) x %d batch(es), %d worker(s)\n",
              config.id.c_str(), config.gammas.size(), config.runs, config.batches, workers);
  const auto result = harness::run_experiment(config, workers);
  harness::emit_outputs(result, config, config.output_dir);
  print_summaries(result, config.thresholds);
  std::printf("outputs written to %s\n", config.output_dir.c_str());
  return count_aborted(result) == 0 ? 0 : 1;
}

struct MeasureOptions {
  std::string trace_path;
  int bins = 30;
  int pair_bins = 10;
  std::vector<std::string> pairs;
};

info::SensorPair parse_pair(const std::string& spec, std::size_t channels) {
  const auto parts = text::split(spec, ',');
  if (parts.size() != 2) throw ConfigError("--pair expects k,l (got '" + spec + "')");
  const auto index = [&](const std::string& s) {
    const double v = text::parse_number(s);
    const int k = static_cast<int>(v);
    if (k != v || k < 1 || static_cast<std::size_t>(k) > channels) {
      throw ConfigError("--pair: channel '" + s + "' is not in 1.." + std::to_string(channels));
    }
    return k - 1;
  };
  info::SensorPair pair{index(parts[0]), index(parts[1])};
  if (pair.first == pair.second) throw ConfigError("--pair: channels must differ");
  return pair;
}

int cmd_measure(const MeasureOptions& opt) {
  std::ifstream in(opt.trace_path);
  if (!in) throw ConfigError("cannot open trace '" + opt.trace_path + "'");
  const auto trace = info::read_trace_csv(in);
  info::SensorPairing pairing;
  for (const auto& spec : opt.pairs) pairing.push_back(parse_pair(spec, trace.channels()));
  std::printf("%zu channel(s), %zu step(s), %d bins, entropy and PI in bits\n", trace.channels(),
              trace.length(), opt.bins);
  std::printf("%-4s %-20s %12s %12s %12s %12s\n", "#", "channel", "entropy", "norm", "PI", "norm");
  for (std::size_t c = 0; c < trace.channels(); ++c) {
    const auto seq = info::discretize(trace, c, opt.bins);
    std::printf("%-4zu %-20s %12.6f %12.6f %12.6f %12.6f\n", c + 1, trace.name(c).c_str(),
                info::entropy(seq), info::normalized_entropy(seq), info::one_step_pi(seq),
                info::normalized_pi(seq));
  }
  if (pairing.empty()) return 0;

  const auto pi_terms = info::pairwise_terms(trace, pairing, opt.pair_bins,
                                             info::PairMeasure::kPredictiveInformation);
  const auto h_terms = info::pairwise_terms(trace, pairing, opt.pair_bins,
                                            info::PairMeasure::kEntropy);
  std::printf("\npairs (%d bins per channel, bits)\n", opt.pair_bins);
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    std::printf("%d,%d  entropy %.6f  PI %.6f\n", pairing[i].first + 1, pairing[i].second + 1,
                h_terms[i], pi_terms[i]);
  }
  std::printf("normalized mean  entropy %.6f  PI %.6f\n",
              info::pairwise_entropy(trace, pairing, opt.pair_bins),
              info::pairwise_pi(trace, pairing, opt.pair_bins));
  std::printf("raw sum (bits)   entropy %.6f  PI %.6f\n",
              info::pairwise_entropy_sum(trace, pairing, opt.pair_bins),
              info::pairwise_pi_sum(trace, pairing, opt.pair_bins));
  return 0;
}

int cmd_summarize(const std::string& dir) {
  const auto result = harness::resummarize_directory(dir);
  std::vector<double> thresholds;
  std::ifstream prov(std::filesystem::path(dir) / "provenance.json");
  const auto doc = nlohmann::json::parse(prov);
  thresholds = harness::ExperimentConfig::from_json(doc.at("config")).thresholds;
  print_summaries(result, thresholds);
  std::printf("summary.csv, thresholds.csv and plots rewritten in %s\n", dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infodrive: intrinsically motivated policy search experiments"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Execute an experiment from a JSON config");
  run->add_option("config", run_opt.config_path, "Experiment config (JSON)")->required();
  run->add_option("--workers", run_opt.workers, "Parallel runs (default 1)")
      ->check(CLI::PositiveNumber);
  run->add_option("--output", run_opt.output, "Output directory (overrides the config)");
  run->add_option("--runs-override", run_opt.runs, "Number of seeded runs per gamma")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--batches-override", run_opt.batches, "Batches per run")
      ->check(CLI::PositiveNumber);

  MeasureOptions measure_opt;
  auto* measure = app.add_subcommand("measure", "Entropy and predictive information of a trace");
  measure->add_option("trace", measure_opt.trace_path, "Trace CSV (header cells name:lo:hi)")
      ->required();
  measure->add_option("--bins", measure_opt.bins, "Bins per channel")->check(CLI::PositiveNumber);
  measure->add_option("--pair", measure_opt.pairs, "Channel pair k,l (1-based); repeatable");
  measure->add_option("--pair-bins", measure_opt.pair_bins, "Bins per channel for pairs")
      ->check(CLI::PositiveNumber);

  std::string summarize_dir;
  auto* summarize = app.add_subcommand("summarize", "Recompute aggregates from stored run CSVs");
  summarize->add_option("dir", summarize_dir, "Experiment output directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_opt);
    if (*measure) return cmd_measure(measure_opt);
    if (*summarize) return cmd_summarize(summarize_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
