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

#include "infodrive/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace infodrive::envs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUprightBand = 5.0 * kPi / 180.0;

template <typename T>
void read_field(const nlohmann::json& doc, const char* key, T& field) {
  if (!doc.contains(key)) return;
  try {
    field = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("environment field '") + key + "': " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- cart-pole

void CartPoleParams::validate() const {
  require(cart_mass > 0.0 && pole_mass > 0.0 && half_length > 0.0,
          "cartpole: masses and half_length must be positive");
  require(dt > 0.0 && substeps >= 1, "cartpole: dt and substeps must be positive");
  require(x_limit > 0.0 && force_limit > 0.0, "cartpole: x_limit and force_limit must be positive");
  require(velocity_range > 0.0 && angular_velocity_range > 0.0,
          "cartpole: sensor ranges must be positive");
}

nlohmann::json CartPoleParams::to_json() const {
  return {{"cart_mass", cart_mass},         {"pole_mass", pole_mass},
          {"half_length", half_length},     {"gravity", gravity},
          {"dt", dt},                       {"x_limit", x_limit},
          {"force_limit", force_limit},     {"substeps", substeps},
          {"velocity_range", velocity_range}, {"angular_velocity_range", angular_velocity_range}};
}

CartPoleParams CartPoleParams::from_json(const nlohmann::json& doc) {
  CartPoleParams p;
  read_field(doc, "cart_mass", p.cart_mass);
  read_field(doc, "pole_mass", p.pole_mass);
  read_field(doc, "half_length", p.half_length);
  read_field(doc, "gravity", p.gravity);
  read_field(doc, "dt", p.dt);
  read_field(doc, "x_limit", p.x_limit);
  read_field(doc, "force_limit", p.force_limit);
  read_field(doc, "substeps", p.substeps);
  read_field(doc, "velocity_range", p.velocity_range);
  read_field(doc, "angular_velocity_range", p.angular_velocity_range);
  p.validate();
  return p;
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * kPi;
  double w = theta - two_pi * std::floor((theta + kPi) / two_pi);
  if (w >= kPi) w -= two_pi;
  if (w < -kPi) w += two_pi;
  return w;
}

CartPoleState cartpole_initial_state() { return {0.0, 0.0, wrap_angle(kPi), 0.0}; }

CartPoleState cartpole_step(const CartPoleParams& p, const CartPoleState& s, double force) {
  if (!std::isfinite(force)) throw NumericError("cartpole_step: non-finite force");
  const double f = std::clamp(force, -p.force_limit, p.force_limit);
  const double total_mass = p.cart_mass + p.pole_mass;
  const double pm_l = p.pole_mass * p.half_length;
  const double h = p.dt / p.substeps;

  CartPoleState n = s;
  for (int k = 0; k < p.substeps; ++k) {
    const double sin_t = std::sin(n.theta);
    const double cos_t = std::cos(n.theta);
    const double tmp = (f + pm_l * n.theta_dot * n.theta_dot * sin_t) / total_mass;
    const double theta_acc = (p.gravity * sin_t - cos_t * tmp) /
                             (p.half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
    const double x_acc = tmp - pm_l * theta_acc * cos_t / total_mass;

    n.x_dot += h * x_acc;
    n.theta_dot += h * theta_acc;
    n.x += h * n.x_dot;
    n.theta = wrap_angle(n.theta + h * n.theta_dot);
    if (n.x > p.x_limit) {
      n.x = p.x_limit;
      n.x_dot = 0.0;
    } else if (n.x < -p.x_limit) {
      n.x = -p.x_limit;
      n.x_dot = 0.0;
    }
  }
  return n;
}

double cartpole_erf(const CartPoleState& s) {
  return std::abs(s.theta) < kUprightBand ? 2.0 - std::abs(s.x) : 0.0;
}

double cartpole_energy(const CartPoleParams& p, const CartPoleState& s) {
  const double total_mass = p.cart_mass + p.pole_mass;
  const double l = p.half_length;
  const double m = p.pole_mass;
  const double kinetic = 0.5 * total_mass * s.x_dot * s.x_dot +
                         m * l * s.x_dot * s.theta_dot * std::cos(s.theta) +
                         0.5 * (4.0 / 3.0) * m * l * l * s.theta_dot * s.theta_dot;
  return kinetic + m * p.gravity * l * std::cos(s.theta);
}

std::vector<info::ChannelRange> cartpole_sensor_ranges(const CartPoleParams& p) {
  return {{-p.x_limit, p.x_limit},
          {-p.velocity_range, p.velocity_range},
          {-kPi, kPi},
          {-p.angular_velocity_range, p.angular_velocity_range}};
}

// ---------------------------------------------------------------- crawler

void CrawlerParams::validate() const {
  require(dt > 0.0, "crawler: dt must be positive");
  require(thc_limit > 0.0 && fti_limit > 0.0, "crawler: joint limits must be positive");
  require(lower_leg > 0.0, "crawler: lower_leg must be positive");
  require(lag > 0.0 && lag <= 1.0, "crawler: lag must lie in (0, 1]");
  require(max_rate > 0.0, "crawler: max_rate must be positive");
  require(stride_radius >= 0.0 && track_width > 0.0, "crawler: invalid body geometry");
  require(noise_std >= 0.0, "crawler: noise_std must be non-negative");
  require(lift_window >= 1, "crawler: lift_window must be >= 1");
  require(min_stance_legs >= 0 && min_stance_legs <= kLegs,
          "crawler: min_stance_legs must lie in [0, 6]");
}

nlohmann::json CrawlerParams::to_json() const {
  return {{"dt", dt},
          {"thc_limit", thc_limit},
          {"fti_limit", fti_limit},
          {"lower_leg", lower_leg},
          {"lag", lag},
          {"max_rate", max_rate},
          {"stride_radius", stride_radius},
          {"track_width", track_width},
          {"noise_std", noise_std},
          {"lift_window", lift_window},
          {"min_stance_legs", min_stance_legs}};
}

CrawlerParams CrawlerParams::from_json(const nlohmann::json& doc) {
  CrawlerParams p;
  read_field(doc, "dt", p.dt);
  read_field(doc, "thc_limit", p.thc_limit);
  read_field(doc, "fti_limit", p.fti_limit);
  read_field(doc, "lower_leg", p.lower_leg);
  read_field(doc, "lag", p.lag);
  read_field(doc, "max_rate", p.max_rate);
  read_field(doc, "stride_radius", p.stride_radius);
  read_field(doc, "track_width", p.track_width);
  read_field(doc, "noise_std", p.noise_std);
  read_field(doc, "lift_window", p.lift_window);
  read_field(doc, "min_stance_legs", p.min_stance_legs);
  p.validate();
  return p;
}

double CrawlerState::radius() const { return std::hypot(x, y); }

double CrawlerState::mean_lift_amplitude() const {
  if (lift_history.empty()) return 0.0;
  const std::size_t window = lift_history.size() / kLegs;
  double sum = 0.0;
  for (int leg = 0; leg < kLegs; ++leg) {
    const auto first = lift_history.begin() + static_cast<std::ptrdiff_t>(leg * window);
    sum += *std::max_element(first, first + static_cast<std::ptrdiff_t>(window));
  }
  return sum / kLegs;
}

double foot_height(const CrawlerParams& p, double knee_angle) {
  return p.lower_leg * std::sin(knee_angle);
}

CrawlerState crawler_initial_state(const CrawlerParams& p) {
  CrawlerState s;
  s.lift_history.assign(static_cast<std::size_t>(kLegs * p.lift_window), 0.0);
  for (int leg = 0; leg < kLegs; ++leg) s.contact[static_cast<std::size_t>(leg)] = true;
  return s;
}

std::array<double, kCrawlerSensors> crawler_sensors(const CrawlerState& s) {
  std::array<double, kCrawlerSensors> out{};
  for (int j = 0; j < kJoints; ++j) out[static_cast<std::size_t>(j)] = s.joints[static_cast<std::size_t>(j)];
  for (int leg = 0; leg < kLegs; ++leg) {
    out[static_cast<std::size_t>(kJoints + leg)] = s.contact[static_cast<std::size_t>(leg)] ? 1.0 : 0.0;
  }
  return out;
}

std::array<double, kCrawlerSensors> crawler_step(const CrawlerParams& p, CrawlerState& s,
                                                 std::span<const double> targets, Rng* noise) {
  if (targets.size() != static_cast<std::size_t>(kJoints)) {
    throw ConfigError("crawler_step: expected 12 joint targets, got " +
                      std::to_string(targets.size()));
  }
  const auto window = static_cast<std::size_t>(p.lift_window);
  if (s.lift_history.size() != window * kLegs) s.lift_history.assign(window * kLegs, 0.0);

  const double max_move = p.max_rate * p.dt;
  std::array<double, kJoints> previous = s.joints;
  for (int j = 0; j < kJoints; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (!std::isfinite(targets[k])) throw NumericError("crawler_step: non-finite joint target");
    const double limit = p.joint_limit(j);
    const double target = std::clamp(targets[k], -1.0, 1.0) * limit;
    double q = s.joints[k] + std::clamp(p.lag * (target - s.joints[k]), -max_move, max_move);
    if (noise != nullptr && p.noise_std > 0.0) q += p.noise_std * noise->normal();
    s.joints[k] = std::clamp(q, -limit, limit);
  }

  // Planted feet sweeping backwards push the body forwards on their side.
  std::array<double, 2> push{};
  int planted = 0;
  for (int leg = 0; leg < kLegs; ++leg) {
    const auto l = static_cast<std::size_t>(leg);
    const double height = foot_height(p, s.joints[2 * l + 1]);
    s.contact[l] = height <= 0.0;
    s.lift_history[l * window + static_cast<std::size_t>(s.lift_cursor)] = std::max(height, 0.0);
    if (!s.contact[l]) continue;
    ++planted;
    const double sweep = previous[2 * l] - s.joints[2 * l];
    push[leg < 3 ? 0 : 1] += p.stride_radius * sweep / 3.0;
  }
  s.lift_cursor = (s.lift_cursor + 1) % p.lift_window;

  if (planted >= p.min_stance_legs && planted > 0) {
    const double forward = 0.5 * (push[0] + push[1]);
    const double turn = (push[1] - push[0]) / p.track_width;
    const double mid_heading = s.heading + 0.5 * turn;
    s.x += forward * std::cos(mid_heading);
    s.y += forward * std::sin(mid_heading);
    s.heading = wrap_angle(s.heading + turn);
  }
  return crawler_sensors(s);
}

std::vector<info::ChannelRange> crawler_sensor_ranges(const CrawlerParams& p) {
  std::vector<info::ChannelRange> ranges;
  for (int j = 0; j < kJoints; ++j) ranges.push_back({-p.joint_limit(j), p.joint_limit(j)});
  for (int leg = 0; leg < kLegs; ++leg) ranges.push_back({0.0, 1.0});
  return ranges;
}

std::vector<std::string> crawler_sensor_names() {
  static const char* kLegNames[kLegs] = {"L1", "L2", "L3", "R1", "R2", "R3"};
  std::vector<std::string> names;
  for (int leg = 0; leg < kLegs; ++leg) {
    names.push_back(std::string(kLegNames[leg]) + "_thc");
    names.push_back(std::string(kLegNames[leg]) + "_fti");
  }
  for (int leg = 0; leg < kLegs; ++leg) names.push_back(std::string(kLegNames[leg]) + "_contact");
  return names;
}

double locomotion_erf(const CrawlerState& final_state) { return final_state.radius(); }

double rescue_erf(const CrawlerState& final_state, double trap_radius) {
  const double beyond = final_state.radius() - trap_radius;
  return beyond > 0.0 ? beyond : 0.0;
}

namespace {

void apply_barrier(double previous_radius, CrawlerState& next, double trap_radius,
                   double wall_height) {
  if (wall_height <= 0.0) return;
  const double r = next.radius();
  if (previous_radius <= trap_radius && r > trap_radius &&
      next.mean_lift_amplitude() < wall_height) {
    next.x *= trap_radius / r;
    next.y *= trap_radius / r;
  }
}

}  // namespace

CrawlerState trap_barrier(const CrawlerState& previous, CrawlerState next, double trap_radius,
                          double wall_height) {
  apply_barrier(previous.radius(), next, trap_radius, wall_height);
  return next;
}

// ---------------------------------------------------------------- episodes

EpisodeResult run_cartpole_episode(const CartPoleParams& p, const policy::NeuralPolicy& controller,
                                   int steps, bool keep_step_rewards) {
  require(steps >= 1, "cartpole episode: steps must be >= 1");
  require(controller.input_count() == 4 && controller.output_count() == 1,
          "cartpole episode: controller must have 4 inputs and 1 output");
  EpisodeResult result;
  result.trace = info::SensorTrace(cartpole_sensor_ranges(p), {"x", "x_dot", "theta", "theta_dot"});
  result.trace.reserve(static_cast<std::size_t>(steps));
  if (keep_step_rewards) result.erf_steps.reserve(static_cast<std::size_t>(steps));

  auto net = controller.initial_state();
  CartPoleState s = cartpole_initial_state();
  std::array<double, 4> obs{};
  std::array<double, 1> action{};
  for (int t = 0; t < steps; ++t) {
    obs = {s.x, s.x_dot, s.theta, s.theta_dot};
    controller.step(net, obs, action);
    s = cartpole_step(p, s, p.force_limit * action[0]);
    obs = {s.x, s.x_dot, s.theta, s.theta_dot};
    result.trace.push_back(obs);
    const double r = cartpole_erf(s);
    result.erf_total += r;
    if (keep_step_rewards) result.erf_steps.push_back(r);
  }
  result.final_x = s.x;
  return result;
}

EpisodeResult run_crawler_episode(const CrawlerParams& p, CrawlerTask task, const TrapParams& trap,
                                  const policy::NeuralPolicy& controller, int steps,
                                  std::uint64_t noise_seed) {
  require(steps >= 1, "crawler episode: steps must be >= 1");
  require(controller.input_count() <= static_cast<std::size_t>(kCrawlerSensors) &&
              controller.output_count() == static_cast<std::size_t>(kJoints),
          "crawler episode: controller must read <= 18 sensors and drive 12 joints");
  require(trap.radius > 0.0 && trap.wall_height >= 0.0, "crawler episode: invalid trap");
  Rng noise(noise_seed);
  EpisodeResult result;
  result.trace = info::SensorTrace(crawler_sensor_ranges(p), crawler_sensor_names());
  result.trace.reserve(static_cast<std::size_t>(steps));

  auto net = controller.initial_state();
  CrawlerState s = crawler_initial_state(p);
  auto sensors = crawler_sensors(s);
  std::array<double, kJoints> targets{};
  const std::span<const double> inputs(sensors.data(), controller.input_count());
  for (int t = 0; t < steps; ++t) {
    controller.step(net, inputs, targets);
    if (task == CrawlerTask::kRescue) {
      const double before = s.radius();
      sensors = crawler_step(p, s, targets, &noise);
      apply_barrier(before, s, trap.radius, trap.wall_height);
    } else {
      sensors = crawler_step(p, s, targets, &noise);
    }
    result.trace.push_back(sensors);
  }
  result.erf_total = task == CrawlerTask::kRescue ? rescue_erf(s, trap.radius) : locomotion_erf(s);
  result.final_x = s.x;
  result.final_y = s.y;
  result.final_heading = s.heading;
  return result;
}

}  // namespace infodrive::envs
