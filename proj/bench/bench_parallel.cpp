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


// Wall-clock comparison of the serial and parallel paths: the pairwise
// estimator kernel and a small gamma sweep.
//
//   bench_parallel [workers]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <thread>

#include "infodrive/harness.hpp"
#include "infodrive/infotheory.hpp"

using namespace infodrive;

namespace {

double time_it(const std::function<void()>& fn, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count() / repeats;
}

void report(const char* what, double serial, double parallel) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speed-up %5.2fx\n", what, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = argc > 1 ? std::atoi(argv[1]) : static_cast<int>(hw == 0 ? 1 : hw);
  std::printf("workers: %d (hardware threads: %u)\n", workers, hw);

  // Pairwise kernel on a 12-channel, 5000-step random trace.
  std::vector<info::ChannelRange> ranges(12, info::ChannelRange{-1.0, 1.0});
  info::SensorTrace trace(ranges);
  Rng rng(42);
  std::vector<double> row(12);
  for (int t = 0; t < 5000; ++t) {
    for (auto& v : row) v = 2.0 * rng.uniform() - 1.0;
    trace.push_back(row);
  }
  const auto pairing = info::sample_pairings(12, 66, rng);
  const auto measure = info::PairMeasure::kPredictiveInformation;
  volatile double sink = 0.0;
  const double kernel_serial = time_it(
      [&] { sink = sink + info::pairwise_terms_serial(trace, pairing, 10, measure).front(); }, 20);
  const double kernel_parallel = time_it(
      [&] { sink = sink + info::pairwise_terms(trace, pairing, 10, measure).front(); }, 20);
  report("pairwise PI, 66 pairs x 5000 steps", kernel_serial, kernel_parallel);

  // Small cart-pole sweep: 2 gammas x 8 runs x 40 batches.
  auto config = harness::ExperimentConfig::defaults_for(harness::EnvKind::kCartPole);
  config.id = "bench";
  config.irf = reward::IrfKind::kEntropy;
  config.gammas = {0.0, 0.0125};
  config.runs = 8;
  config.batches = 40;
  const double sweep_serial = time_it([&] { harness::run_experiment_serial(config); }, 1);
  const double sweep_parallel = time_it([&] { harness::run_experiment(config, workers); }, 1);
  report("cart-pole sweep, 16 runs", sweep_serial, sweep_parallel);
  return 0;
}
