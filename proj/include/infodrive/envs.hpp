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

// Deterministic episodic environments: cart-pole swing-up and a planar
// 12-joint crawler used for the locomotion and self-rescue tasks.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "infodrive/common.hpp"
#include "infodrive/infotheory.hpp"
#include "infodrive/policy.hpp"

namespace infodrive::envs {

// ---------------------------------------------------------------- cart-pole

struct CartPoleParams {
  double cart_mass = 1.0;     // kg
  double pole_mass = 0.1;     // kg
  double half_length = 0.5;   // m
  double gravity = 9.81;      // m/s^2
  double dt = 0.01;           // s
  double x_limit = 2.4;       // m
  double force_limit = 10.0;  // N
  int substeps = 1;
  double velocity_range = 10.0;
  double angular_velocity_range = 30.0;

  void validate() const;
  nlohmann::json to_json() const;
  static CartPoleParams from_json(const nlohmann::json& doc);
};

/// theta = 0 is upright; theta is kept in [-pi, pi).
struct CartPoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

double wrap_angle(double theta);

/// Hanging-down start, cart centred, at rest.
CartPoleState cartpole_initial_state();

/// Frictionless cart-pole, semi-implicit Euler. Force is clamped to the
/// force limit; the cart stops dead at |x| = x_limit.
CartPoleState cartpole_step(const CartPoleParams& p, const CartPoleState& s, double force);

/// 2 - |x| while the pole is within 5 degrees of upright, else 0.
double cartpole_erf(const CartPoleState& s);

/// Total mechanical energy; potential measured from the pivot height.
double cartpole_energy(const CartPoleParams& p, const CartPoleState& s);

std::vector<info::ChannelRange> cartpole_sensor_ranges(const CartPoleParams& p);

// ---------------------------------------------------------------- crawler

inline constexpr int kLegs = 6;
inline constexpr int kJoints = 12;
inline constexpr int kCrawlerSensors = 18;

/// Planar kinematic-thrust hexapod. Legs 0-2 are left (front to back), 3-5
/// right. Joint 2k is leg k's ThC (fore/aft swing, positive forward) and
/// 2k+1 its FTi (knee, positive lifts the foot).
struct CrawlerParams {
  double dt = 0.02;              // s
  double thc_limit = 0.5;        // rad
  double fti_limit = 0.6;        // rad
  double lower_leg = 0.45;       // m
  double lag = 1.0;              // fraction of remaining error closed per step
  double max_rate = 60.0;        // rad/s
  double stride_radius = 0.02;   // m of body travel per rad of stance sweep (after slip)
  double track_width = 0.6;      // m
  double noise_std = 0.02;       // rad, actuation noise
  int lift_window = 100;         // steps
  int min_stance_legs = 3;       // fewer planted feet slip without thrust

  void validate() const;
  double joint_limit(int joint) const { return joint % 2 == 0 ? thc_limit : fti_limit; }
  nlohmann::json to_json() const;
  static CrawlerParams from_json(const nlohmann::json& doc);
};

struct CrawlerState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  std::array<double, kJoints> joints{};
  std::array<bool, kLegs> contact{};
  /// Ring buffer of foot heights (clamped at 0), lift_window entries per leg.
  std::vector<double> lift_history;
  int lift_cursor = 0;

  double radius() const;
  /// Mean over legs of the largest foot lift in the trailing window.
  double mean_lift_amplitude() const;
};

CrawlerState crawler_initial_state(const CrawlerParams& p);

double foot_height(const CrawlerParams& p, double knee_angle);

/// Advances one step towards `targets` (12 values in (-1, 1), scaled to the
/// joint limits). `noise` may be null for noise-free actuation. Returns the
/// 18 sensor values: 12 joint angles then 6 contacts (0/1).
std::array<double, kCrawlerSensors> crawler_step(const CrawlerParams& p, CrawlerState& s,
                                                 std::span<const double> targets, Rng* noise);

std::array<double, kCrawlerSensors> crawler_sensors(const CrawlerState& s);

std::vector<info::ChannelRange> crawler_sensor_ranges(const CrawlerParams& p);
std::vector<std::string> crawler_sensor_names();

/// Distance of the body from the origin at episode end.
double locomotion_erf(const CrawlerState& final_state);

/// Distance beyond the trap radius, 0 inside or on the boundary.
double rescue_erf(const CrawlerState& final_state, double trap_radius);

/// Walls of height h: a step from inside the trap to outside is only
/// allowed when the mean lift amplitude reaches h; otherwise the body is
/// pulled back onto the radius (tangential motion kept). Inert for h = 0.
CrawlerState trap_barrier(const CrawlerState& previous, CrawlerState next, double trap_radius,
                          double wall_height);

// ---------------------------------------------------------------- episodes

struct EpisodeResult {
  info::SensorTrace trace;
  double erf_total = 0.0;
  /// Per-step ERF (cart-pole only).
  std::vector<double> erf_steps;
  double final_x = 0.0;
  double final_y = 0.0;
  double final_heading = 0.0;
};

/// F = force_limit * output; T steps from the hanging start.
EpisodeResult run_cartpole_episode(const CartPoleParams& p, const policy::NeuralPolicy& controller,
                                   int steps, bool keep_step_rewards = false);

enum class CrawlerTask { kLocomotion, kRescue };

struct TrapParams {
  double radius = 2.0;       // m
  double wall_height = 0.0;  // m
};

/// The controller receives the first input_count() sensors (angles first).
EpisodeResult run_crawler_episode(const CrawlerParams& p, CrawlerTask task, const TrapParams& trap,
                                  const policy::NeuralPolicy& controller, int steps,
                                  std::uint64_t noise_seed);

}  // namespace infodrive::envs
