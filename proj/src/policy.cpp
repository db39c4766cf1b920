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

#include "infodrive/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "infodrive/common.hpp"

namespace infodrive::policy {

namespace {

// Largest double below 1; keeps saturated units strictly inside (-1, 1).
const double kMaxActivation = std::nextafter(1.0, 0.0);

const char* kind_name(NeuronKind kind) { return kind == NeuronKind::kBuffer ? "buffer" : "tanh"; }

}  // namespace

int NetworkTopology::add_neuron(NeuronKind kind, int bias_slot, double initial_activation) {
  neurons.push_back({kind, bias_slot, initial_activation});
  return static_cast<int>(neurons.size()) - 1;
}

void NetworkTopology::add_edge(int source, int target, int slot) {
  edges.push_back({source, target, slot, 0.0});
}

void NetworkTopology::add_fixed_edge(int source, int target, double weight) {
  edges.push_back({source, target, -1, weight});
}

void NetworkTopology::validate() const {
  const int n = static_cast<int>(neurons.size());
  require(n > 0, "topology '" + name + "': no neurons");
  require(!outputs.empty(), "topology '" + name + "': output list is empty");
  std::set<int> slots;
  for (const auto& neuron : neurons) {
    if (neuron.kind == NeuronKind::kBuffer) {
      require(neuron.bias_slot < 0, "topology '" + name + "': buffer neuron with bias");
    } else if (neuron.bias_slot >= 0) {
      slots.insert(neuron.bias_slot);
    }
  }
  for (const auto& e : edges) {
    require(e.source >= 0 && e.source < n && e.target >= 0 && e.target < n,
            "topology '" + name + "': edge endpoint out of range");
    require(neurons[static_cast<std::size_t>(e.target)].kind == NeuronKind::kTanh,
            "topology '" + name + "': buffer neuron has an incoming edge");
    if (e.slot >= 0) slots.insert(e.slot);
  }
  std::set<int> input_set;
  for (int i : inputs) {
    require(i >= 0 && i < n, "topology '" + name + "': input index out of range");
    require(neurons[static_cast<std::size_t>(i)].kind == NeuronKind::kBuffer,
            "topology '" + name + "': input is not a buffer neuron");
    require(input_set.insert(i).second, "topology '" + name + "': duplicate input");
  }
  for (int i = 0; i < n; ++i) {
    if (neurons[static_cast<std::size_t>(i)].kind == NeuronKind::kBuffer) {
      require(input_set.count(i) == 1, "topology '" + name + "': buffer neuron is not an input");
    }
  }
  for (int o : outputs) {
    require(o >= 0 && o < n, "topology '" + name + "': output index out of range");
  }
  if (!slots.empty()) {
    require(*slots.begin() == 0 && *slots.rbegin() == static_cast<int>(slots.size()) - 1,
            "topology '" + name + "': slot ids are not contiguous from 0");
  }
}

int NetworkTopology::slot_count() const {
  int top = -1;
  for (const auto& neuron : neurons) top = std::max(top, neuron.bias_slot);
  for (const auto& e : edges) top = std::max(top, e.slot);
  return top + 1;
}

int NetworkTopology::weight_slot_count() const {
  std::set<int> slots;
  for (const auto& e : edges) {
    if (e.slot >= 0) slots.insert(e.slot);
  }
  return static_cast<int>(slots.size());
}

nlohmann::json NetworkTopology::to_json() const {
  nlohmann::json doc;
  doc["name"] = name;
  doc["slots"] = slot_count();
  auto& ns = doc["neurons"] = nlohmann::json::array();
  for (const auto& neuron : neurons) {
    nlohmann::json j{{"kind", kind_name(neuron.kind)}};
    if (neuron.bias_slot >= 0) j["bias_slot"] = neuron.bias_slot;
    if (neuron.initial_activation != 0.0) j["initial"] = neuron.initial_activation;
    ns.push_back(std::move(j));
  }
  auto& es = doc["edges"] = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json j{{"source", e.source}, {"target", e.target}};
    if (e.slot >= 0) {
      j["slot"] = e.slot;
    } else {
      j["weight"] = e.fixed_weight;
    }
    es.push_back(std::move(j));
  }
  doc["inputs"] = inputs;
  doc["outputs"] = outputs;
  return doc;
}

NetworkTopology NetworkTopology::from_json(const nlohmann::json& doc) {
  NetworkTopology t;
  try {
    t.name = doc.at("name").get<std::string>();
    for (const auto& j : doc.at("neurons")) {
      const auto kind = j.at("kind").get<std::string>();
      require(kind == "buffer" || kind == "tanh", "topology: unknown neuron kind '" + kind + "'");
      t.add_neuron(kind == "buffer" ? NeuronKind::kBuffer : NeuronKind::kTanh,
                   j.value("bias_slot", -1), j.value("initial", 0.0));
    }
    for (const auto& j : doc.at("edges")) {
      if (j.contains("slot")) {
        t.add_edge(j.at("source").get<int>(), j.at("target").get<int>(), j.at("slot").get<int>());
      } else {
        t.add_fixed_edge(j.at("source").get<int>(), j.at("target").get<int>(),
                         j.at("weight").get<double>());
      }
    }
    t.inputs = doc.at("inputs").get<std::vector<int>>();
    t.outputs = doc.at("outputs").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("topology document: ") + e.what());
  }
  t.validate();
  return t;
}

CartPoleVariant parse_cartpole_variant(const std::string& name) {
  if (name == "A") return CartPoleVariant::kA;
  if (name == "B") return CartPoleVariant::kB;
  if (name == "C") return CartPoleVariant::kC;
  if (name == "D") return CartPoleVariant::kD;
  throw ConfigError("unknown cart-pole controller variant '" + name + "' (expected A, B, C or D)");
}

NetworkTopology build_cartpole_controller(CartPoleVariant variant) {
  NetworkTopology t;
  constexpr int kInputs = 4;
  for (int i = 0; i < kInputs; ++i) t.inputs.push_back(t.add_neuron(NeuronKind::kBuffer));

  if (variant == CartPoleVariant::kA) {
    t.name = "cartpole-A";
    const int out = t.add_neuron(NeuronKind::kTanh, 5);
    for (int i = 0; i < kInputs; ++i) t.add_edge(t.inputs[static_cast<std::size_t>(i)], out, i);
    t.add_edge(out, out, 4);
    t.outputs = {out};
    t.validate();
    return t;
  }

  constexpr int kHidden = 4;
  int slot = 0;
  std::vector<int> hidden;
  for (int h = 0; h < kHidden; ++h) hidden.push_back(t.add_neuron(NeuronKind::kTanh));
  for (int h = 0; h < kHidden; ++h) {
    for (int i = 0; i < kInputs; ++i) {
      t.add_edge(t.inputs[static_cast<std::size_t>(i)], hidden[static_cast<std::size_t>(h)],
                 slot++);
    }
  }
  for (int h : hidden) t.neurons[static_cast<std::size_t>(h)].bias_slot = slot++;
  const int out = t.add_neuron(NeuronKind::kTanh);
  for (int h : hidden) t.add_edge(h, out, slot++);
  t.neurons[static_cast<std::size_t>(out)].bias_slot = slot++;

  if (variant == CartPoleVariant::kC || variant == CartPoleVariant::kD) {
    for (int h : hidden) t.add_edge(h, h, slot++);
  }
  if (variant == CartPoleVariant::kD) {
    for (int h : hidden) {
      for (int g : hidden) {
        if (g != h) t.add_edge(g, h, slot++);
      }
    }
  }
  t.name = variant == CartPoleVariant::kB   ? "cartpole-B"
           : variant == CartPoleVariant::kC ? "cartpole-C"
                                            : "cartpole-D";
  t.outputs = {out};
  t.validate();
  return t;
}

NetworkTopology build_hexapod_cpg() {
  // Slot map of the shared leg module:
  //   0-5   sensor -> motor (ThC angle, FTi angle, contact) x (ThC, FTi)
  //   6-9   intra-leg recurrence
  //   10-11 biases
  //   12-15 ipsilateral coupling, anterior -> posterior
  //   16-19 ipsilateral coupling, posterior -> anterior
  //   20-23 contralateral coupling
  //   24-27 oscillator drive, tripod group A (L1, L3, R2)
  //   28-31 oscillator drive, tripod group B (R1, R3, L2)
  constexpr int kLegs = 6;
  constexpr double kOscGain = 1.2;
  constexpr double kOscPhase = 0.13;

  NetworkTopology t;
  t.name = "hexapod-cpg";
  for (int i = 0; i < 18; ++i) t.inputs.push_back(t.add_neuron(NeuronKind::kBuffer));
  std::vector<int> motor;
  for (int leg = 0; leg < kLegs; ++leg) {
    motor.push_back(t.add_neuron(NeuronKind::kTanh, 10));
    motor.push_back(t.add_neuron(NeuronKind::kTanh, 11));
  }
  const int osc0 = t.add_neuron(NeuronKind::kTanh, -1, 0.5);
  const int osc1 = t.add_neuron(NeuronKind::kTanh, -1, 0.0);
  t.add_fixed_edge(osc0, osc0, kOscGain * std::cos(kOscPhase));
  t.add_fixed_edge(osc1, osc0, kOscGain * std::sin(kOscPhase));
  t.add_fixed_edge(osc0, osc1, -kOscGain * std::sin(kOscPhase));
  t.add_fixed_edge(osc1, osc1, kOscGain * std::cos(kOscPhase));

  auto neuron = [&](int leg, int joint) { return motor[static_cast<std::size_t>(2 * leg + joint)]; };
  auto couple = [&](int from_leg, int to_leg, int base) {
    for (int s = 0; s < 2; ++s) {
      for (int j = 0; j < 2; ++j) t.add_edge(neuron(from_leg, s), neuron(to_leg, j), base + s * 2 + j);
    }
  };

  for (int leg = 0; leg < kLegs; ++leg) {
    const int sensors[3] = {t.inputs[static_cast<std::size_t>(2 * leg)],
                            t.inputs[static_cast<std::size_t>(2 * leg + 1)],
                            t.inputs[static_cast<std::size_t>(12 + leg)]};
    for (int s = 0; s < 3; ++s) {
      for (int j = 0; j < 2; ++j) t.add_edge(sensors[s], neuron(leg, j), s * 2 + j);
    }
    couple(leg, leg, 6);
    const bool group_a = leg == 0 || leg == 2 || leg == 4;
    const int drive = group_a ? 24 : 28;
    for (int o = 0; o < 2; ++o) {
      for (int j = 0; j < 2; ++j) t.add_edge(o == 0 ? osc0 : osc1, neuron(leg, j), drive + o * 2 + j);
    }
  }
  // Legs 0-2 left front to back, 3-5 right front to back.
  for (int side = 0; side < 2; ++side) {
    for (int k = 0; k < 2; ++k) {
      const int anterior = side * 3 + k;
      couple(anterior, anterior + 1, 12);
      couple(anterior + 1, anterior, 16);
    }
  }
  for (int k = 0; k < 3; ++k) {
    couple(k, k + 3, 20);
    couple(k + 3, k, 20);
  }
  t.outputs = motor;
  t.validate();
  return t;
}

NetworkTopology build_rescue_controller() {
  constexpr int kJoints = 12;
  NetworkTopology t;
  t.name = "rescue-one-layer";
  for (int i = 0; i < kJoints; ++i) t.inputs.push_back(t.add_neuron(NeuronKind::kBuffer));
  for (int i = 0; i < kJoints; ++i) {
    t.outputs.push_back(t.add_neuron(NeuronKind::kTanh, kJoints * kJoints + i));
  }
  for (int i = 0; i < kJoints; ++i) {
    for (int j = 0; j < kJoints; ++j) {
      t.add_edge(t.inputs[static_cast<std::size_t>(j)], t.outputs[static_cast<std::size_t>(i)],
                 i * kJoints + j);
    }
  }
  t.validate();
  return t;
}

NeuralPolicy::NeuralPolicy(std::shared_ptr<const NetworkTopology> topology)
    : topology_(std::move(topology)) {
  require(topology_ != nullptr, "NeuralPolicy: null topology");
  topology_->validate();
  const auto& t = *topology_;
  const auto n = t.neurons.size();
  params_.assign(static_cast<std::size_t>(t.slot_count()), 0.0);

  std::vector<std::vector<const Edge*>> incoming(n);
  for (const auto& e : t.edges) incoming[static_cast<std::size_t>(e.target)].push_back(&e);
  row_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    row_start_[i + 1] = row_start_[i] + static_cast<int>(incoming[i].size());
    for (const Edge* e : incoming[i]) {
      edge_source_.push_back(e->source);
      edge_slot_.push_back(e->slot);
      edge_weight_.push_back(e->fixed_weight);
    }
    if (t.neurons[i].kind == NeuronKind::kTanh) tanh_neurons_.push_back(static_cast<int>(i));
  }
  bias_.assign(n, 0.0);
  resolve_weights();
}

void NeuralPolicy::bind_parameters(std::span<const double> params) {
  require(params.size() == params_.size(),
          "bind_parameters: expected " + std::to_string(params_.size()) + " values, got " +
              std::to_string(params.size()));
  std::copy(params.begin(), params.end(), params_.begin());
  resolve_weights();
}

void NeuralPolicy::resolve_weights() {
  for (std::size_t k = 0; k < edge_slot_.size(); ++k) {
    if (edge_slot_[k] >= 0) edge_weight_[k] = params_[static_cast<std::size_t>(edge_slot_[k])];
  }
  const auto& neurons = topology_->neurons;
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    bias_[i] = neurons[i].bias_slot >= 0 ? params_[static_cast<std::size_t>(neurons[i].bias_slot)]
                                         : 0.0;
  }
}

NetworkState NeuralPolicy::initial_state() const {
  NetworkState s;
  s.activation.reserve(topology_->neurons.size());
  for (const auto& neuron : topology_->neurons) s.activation.push_back(neuron.initial_activation);
  s.scratch = s.activation;
  return s;
}

void NeuralPolicy::step(NetworkState& state, std::span<const double> inputs,
                        std::span<double> outputs) const {
  const auto& t = *topology_;
  if (inputs.size() != t.inputs.size()) {
    throw ConfigError("NeuralPolicy::step: expected " + std::to_string(t.inputs.size()) +
                      " inputs, got " + std::to_string(inputs.size()));
  }
  if (outputs.size() != t.outputs.size() || state.activation.size() != t.neurons.size()) {
    throw ConfigError("NeuralPolicy::step: output buffer or state size mismatch");
  }
  auto& a = state.activation;
  auto& next = state.scratch;
  next.resize(a.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) a[static_cast<std::size_t>(t.inputs[k])] = inputs[k];
  for (int n : tanh_neurons_) {
    const auto i = static_cast<std::size_t>(n);
    double sum = bias_[i];
    for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      sum += edge_weight_[static_cast<std::size_t>(k)] *
             a[static_cast<std::size_t>(edge_source_[static_cast<std::size_t>(k)])];
    }
    next[i] = std::clamp(std::tanh(sum), -kMaxActivation, kMaxActivation);
  }
  for (int n : tanh_neurons_) a[static_cast<std::size_t>(n)] = next[static_cast<std::size_t>(n)];
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    outputs[k] = a[static_cast<std::size_t>(t.outputs[k])];
  }
}

std::vector<double> NeuralPolicy::step(NetworkState& state, std::span<const double> inputs) const {
  std::vector<double> out(topology_->outputs.size());
  step(state, inputs, out);
  return out;
}

}  // namespace infodrive::policy
