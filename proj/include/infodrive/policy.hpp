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

// Fixed-topology controllers: identity buffer inputs and tanh units, with a
// flat trainable parameter view for the optimizer.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace infodrive::policy {

enum class NeuronKind { kBuffer, kTanh };

/// Edge weight comes either from a trainable slot or from a fixed constant.
struct Edge {
  int source = 0;
  int target = 0;
  int slot = -1;
  double fixed_weight = 0.0;
};

/// Immutable once validated. Slots form the contiguous range [0, slot_count).
class NetworkTopology {
 public:
  struct Neuron {
    NeuronKind kind = NeuronKind::kTanh;
    int bias_slot = -1;
    double initial_activation = 0.0;
  };

  std::string name;
  std::vector<Neuron> neurons;
  std::vector<Edge> edges;
  std::vector<int> inputs;
  std::vector<int> outputs;

  int add_neuron(NeuronKind kind, int bias_slot = -1, double initial_activation = 0.0);
  void add_edge(int source, int target, int slot);
  void add_fixed_edge(int source, int target, double weight);

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  int slot_count() const;
  /// Number of distinct slots used as weights (not biases).
  int weight_slot_count() const;

  nlohmann::json to_json() const;
  static NetworkTopology from_json(const nlohmann::json& doc);
};

enum class CartPoleVariant { kA, kB, kC, kD };

CartPoleVariant parse_cartpole_variant(const std::string& name);

/// Cart-pole networks: 4 buffer inputs (x, x_dot, theta, theta_dot), one tanh
/// output. A: direct with output self-connection. B: 4 hidden, fully
/// connected. C: B plus hidden self-recurrence. D: C plus lateral
/// hidden-to-hidden edges.
NetworkTopology build_cartpole_controller(CartPoleVariant variant);

/// Six weight-shared leg modules driven by a fixed two-neuron oscillator.
/// Inputs: 12 joint angles then 6 foot contacts. Outputs: 12 joint targets
/// (leg-major, ThC then FTi). 32 shared slots.
NetworkTopology build_hexapod_cpg();

/// One-layer 12 -> 12 tanh network on joint angles: 144 weights + 12 biases.
NetworkTopology build_rescue_controller();

/// Per-episode activations. Tanh activations stay in (-1, 1).
struct NetworkState {
  std::vector<double> activation;
  std::vector<double> scratch;
};

using ParameterVector = std::vector<double>;

/// A topology with bound parameters.
class NeuralPolicy {
 public:
  explicit NeuralPolicy(std::shared_ptr<const NetworkTopology> topology);

  const NetworkTopology& topology() const { return *topology_; }
  int parameter_count() const { return topology_->slot_count(); }
  std::size_t input_count() const { return topology_->inputs.size(); }
  std::size_t output_count() const { return topology_->outputs.size(); }

  void bind_parameters(std::span<const double> params);
  ParameterVector read_parameters() const { return params_; }

  NetworkState initial_state() const;

  /// Synchronous update. Buffer neurons take `inputs` verbatim; every tanh
  /// neuron computes tanh(bias + sum w * a_src), where buffer sources carry
  /// the inputs just presented and tanh sources carry their activation from
  /// the previous step.
  void step(NetworkState& state, std::span<const double> inputs, std::span<double> outputs) const;
  std::vector<double> step(NetworkState& state, std::span<const double> inputs) const;

 private:
  void resolve_weights();

  std::shared_ptr<const NetworkTopology> topology_;
  ParameterVector params_;
  // Incoming edges grouped by target (CSR).
  std::vector<int> row_start_;
  std::vector<int> edge_source_;
  std::vector<int> edge_slot_;
  std::vector<double> edge_weight_;
  std::vector<double> bias_;
  std::vector<int> tanh_neurons_;
};

}  // namespace infodrive::policy
