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


#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "infodrive/envs.hpp"

using namespace infodrive;
using namespace infodrive::envs;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Tripod gait: legs {0, 2, 4} and {1, 3, 5} alternate stance every half
// period. Stance legs press the knee down and sweep the hip backwards; swing
// legs lift and swing forwards.
std::array<double, kJoints> tripod_targets(int t, int period) {
  std::array<double, kJoints> targets{};
  const int half = period / 2;
  const bool first_group_stance = (t / half) % 2 == 0;
  const double u = static_cast<double>(t % half) / half;
  for (int leg = 0; leg < kLegs; ++leg) {
    const bool first_group = leg % 2 == 0;
    const bool stance = first_group == first_group_stance;
    const auto l = static_cast<std::size_t>(leg);
    targets[2 * l] = stance ? 1.0 - 2.0 * u : -1.0 + 2.0 * u;
    targets[2 * l + 1] = stance ? -1.0 : 1.0;
  }
  return targets;
}

CrawlerState with_lift(double lift, double x, double y) {
  CrawlerParams p;
  auto s = crawler_initial_state(p);
  std::fill(s.lift_history.begin(), s.lift_history.end(), lift);
  s.x = x;
  s.y = y;
  return s;
}

}  // namespace

TEST_CASE("cart-pole equilibria") {
  CartPoleParams p;
  const CartPoleState hanging{0.0, 0.0, kPi, 0.0};
  const auto h = cartpole_step(p, hanging, 0.0);
  CHECK(std::abs(h.x) <= 1e-12);
  CHECK(std::abs(h.x_dot) <= 1e-12);
  CHECK(std::abs(wrap_angle(h.theta - kPi)) <= 1e-12);
  CHECK(std::abs(h.theta_dot) <= 1e-12);

  const CartPoleState upright{};
  const auto u = cartpole_step(p, upright, 0.0);
  CHECK(u.x == 0.0);
  CHECK(u.x_dot == 0.0);
  CHECK(u.theta == 0.0);
  CHECK(u.theta_dot == 0.0);
}

TEST_CASE("a tilted pole falls away from upright") {
  CartPoleParams p;
  const auto s = cartpole_step(p, {0.0, 0.0, 0.1, 0.0}, 0.0);
  CHECK(s.theta > 0.1);
  CHECK(s.theta_dot > 0.0);
  // Linearization: theta_acc ~ g * theta / (l * (4/3 - m/M)).
  const double expected = 9.81 * std::sin(0.1) /
                          (0.5 * (4.0 / 3.0 - 0.1 * std::cos(0.1) * std::cos(0.1) / 1.1));
  CHECK(s.theta_dot / p.dt == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("the hanging start is wrapped into [-pi, pi)") {
  const auto s = cartpole_initial_state();
  CHECK(s.theta == -kPi);
  CHECK(wrap_angle(kPi) == -kPi);
  CHECK(wrap_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
  CHECK(wrap_angle(-kPi) == -kPi);
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    CHECK(w >= -kPi);
    CHECK(w < kPi);
    CHECK(std::abs(std::remainder(w - a, 2.0 * kPi)) <= 1e-12);
  }
}

TEST_CASE("cart-pole reward table") {
  CHECK(cartpole_erf({0.0, 0.0, 0.0, 0.0}) == 2.0);
  CHECK(cartpole_erf({1.5, 0.0, 2.0 * kDeg, 0.0}) == 0.5);
  CHECK(cartpole_erf({0.0, 0.0, 6.0 * kDeg, 0.0}) == 0.0);
  CHECK(cartpole_erf({-1.5, 0.0, -2.0 * kDeg, 0.0}) == 0.5);
  CHECK(cartpole_erf({0.0, 0.0, 5.0 * kDeg, 0.0}) == 0.0);
  // Beyond |x| = 2 the reward is negative while upright.
  CHECK(cartpole_erf({2.4, 0.0, 0.0, 0.0}) == doctest::Approx(-0.4));
}

TEST_CASE("small swings conserve energy at the default step") {
  CartPoleParams p;
  CartPoleState s{0.0, 0.0, kPi - 0.15, 0.0};
  const double e0 = cartpole_energy(p, s);
  for (int t = 0; t < 2000; ++t) {
    s = cartpole_step(p, s, 0.0);
    REQUIRE(std::abs(s.x) < p.x_limit);
    REQUIRE(std::abs(cartpole_energy(p, s) - e0) <= 1e-3 * std::abs(e0));
  }
}

TEST_CASE("full swings conserve energy once substepped") {
  CartPoleParams p;
  p.substeps = 100;
  for (double start : {0.3, 1.0, 2.5}) {
    CartPoleState s{0.0, 0.0, start, 0.0};
    // Measure against the pendulum's energy scale so that a start whose
    // total energy happens to be near zero is not over-weighted.
    const double scale = p.pole_mass * p.gravity * p.half_length;
    const double e0 = cartpole_energy(p, s);
    for (int t = 0; t < 2000; ++t) {
      s = cartpole_step(p, s, 0.0);
      REQUIRE(std::abs(s.x) < p.x_limit);
      REQUIRE(cartpole_energy(p, s) - e0 <= 1e-3 * scale);
      REQUIRE(std::abs(cartpole_energy(p, s) - e0) <= 1e-3 * scale);
    }
  }
}

TEST_CASE("the cart never leaves the track") {
  CartPoleParams p;
  Rng rng(4);
  CartPoleState s = cartpole_initial_state();
  for (int t = 0; t < 100000; ++t) {
    s = cartpole_step(p, s, 40.0 * (rng.uniform() - 0.3));
    REQUIRE(std::abs(s.x) <= p.x_limit);
    REQUIRE(s.theta >= -kPi);
    REQUIRE(s.theta < kPi);
  }
  CHECK_THROWS_AS(cartpole_step(p, s, std::nan("")), NumericError);
}

TEST_CASE("cart-pole dynamics are deterministic") {
  CartPoleParams p;
  Rng a(5), b(5);
  CartPoleState sa = cartpole_initial_state();
  CartPoleState sb = cartpole_initial_state();
  for (int t = 0; t < 5000; ++t) {
    sa = cartpole_step(p, sa, 10.0 * a.normal());
    sb = cartpole_step(p, sb, 10.0 * b.normal());
    REQUIRE(sa.x == sb.x);
    REQUIRE(sa.theta == sb.theta);
  }
}

TEST_CASE("holding the current pose does not move the body") {
  CrawlerParams p;
  p.noise_std = 0.0;
  auto s = crawler_initial_state(p);
  std::array<double, kJoints> hold{};
  for (int t = 0; t < 100; ++t) crawler_step(p, s, hold, nullptr);
  CHECK(s.x == 0.0);
  CHECK(s.y == 0.0);
  CHECK(s.heading == 0.0);
}

TEST_CASE("tripod gait walks forwards") {
  CrawlerParams p;
  auto s = crawler_initial_state(p);
  for (int t = 0; t < 200; ++t) crawler_step(p, s, tripod_targets(t, 40), nullptr);
  // Five full cycles, ten stance phases. Each sweeps the three stance hips
  // by about 2 * thc_limit; the body advances stride_radius / 2 per radian.
  const double estimate = 10 * 2.0 * p.thc_limit * p.stride_radius / 2.0;
  CHECK(s.x > 0.0);
  CHECK(s.x == doctest::Approx(estimate).epsilon(0.15));
  CHECK(std::abs(s.heading) < 0.1);
  // Frozen regression value of the noise-free fixture.
  CHECK(s.x == doctest::Approx(0.085499638484263979).epsilon(1e-12));
}

TEST_CASE("sweeping only the left legs turns the body clockwise") {
  CrawlerParams p;
  p.noise_std = 0.0;
  auto s = crawler_initial_state(p);
  std::array<double, kJoints> targets{};
  for (int leg = 0; leg < 3; ++leg) targets[static_cast<std::size_t>(2 * leg)] = 1.0;
  for (int t = 0; t < 20; ++t) crawler_step(p, s, targets, nullptr);  // reach forward
  const double heading_before = s.heading;
  for (int leg = 0; leg < 3; ++leg) targets[static_cast<std::size_t>(2 * leg)] = -1.0;
  for (int t = 0; t < 20; ++t) crawler_step(p, s, targets, nullptr);  // push back
  // Left thrust only: turn = (push_right - push_left) / track_width < 0.
  CHECK(s.heading - heading_before < 0.0);
}

TEST_CASE("too few planted feet produce no thrust") {
  CrawlerParams p;
  auto s = crawler_initial_state(p);
  std::array<double, kJoints> targets{};
  for (int leg = 0; leg < kLegs; ++leg) {
    targets[static_cast<std::size_t>(2 * leg + 1)] = leg < 2 ? -1.0 : 1.0;
  }
  for (int t = 0; t < 30; ++t) {
    for (int leg = 0; leg < kLegs; ++leg) {
      targets[static_cast<std::size_t>(2 * leg)] = t % 2 == 0 ? 1.0 : -1.0;
    }
    crawler_step(p, s, targets, nullptr);
  }
  CHECK(s.x == 0.0);
  CHECK(s.y == 0.0);
}

TEST_CASE("crawler fuzz respects joint limits and contact consistency") {
  CrawlerParams p;
  Rng rng(6);
  Rng noise(7);
  auto s = crawler_initial_state(p);
  std::array<double, kJoints> targets{};
  for (int t = 0; t < 20000; ++t) {
    for (auto& v : targets) v = 3.0 * rng.normal();
    const auto sensors = crawler_step(p, s, targets, &noise);
    for (int j = 0; j < kJoints; ++j) {
      REQUIRE(std::abs(s.joints[static_cast<std::size_t>(j)]) <= p.joint_limit(j));
      REQUIRE(sensors[static_cast<std::size_t>(j)] == s.joints[static_cast<std::size_t>(j)]);
    }
    for (int leg = 0; leg < kLegs; ++leg) {
      const bool planted = foot_height(p, s.joints[static_cast<std::size_t>(2 * leg + 1)]) <= 0.0;
      REQUIRE(s.contact[static_cast<std::size_t>(leg)] == planted);
      REQUIRE(sensors[static_cast<std::size_t>(kJoints + leg)] == (planted ? 1.0 : 0.0));
    }
  }
  std::vector<double> wrong(11, 0.0);
  CHECK_THROWS_AS(crawler_step(p, s, wrong, nullptr), ConfigError);
}

TEST_CASE("sensor layout") {
  CHECK(cartpole_sensor_ranges(CartPoleParams{}).size() == 4);
  CrawlerParams p;
  const auto ranges = crawler_sensor_ranges(p);
  REQUIRE(ranges.size() == 18);
  CHECK(ranges[0].hi == p.thc_limit);
  CHECK(ranges[1].hi == p.fti_limit);
  CHECK(ranges[12].lo == 0.0);
  CHECK(ranges[17].hi == 1.0);
  const auto names = crawler_sensor_names();
  CHECK(names.front() == "L1_thc");
  CHECK(names[11] == "R3_fti");
  CHECK(names.back() == "R3_contact");
}

TEST_CASE("distance rewards") {
  CrawlerState s;
  CHECK(locomotion_erf(s) == 0.0);
  s.x = 3.0;
  s.y = 4.0;
  CHECK(locomotion_erf(s) == 5.0);
  s.heading = 2.0;
  CHECK(locomotion_erf(s) == 5.0);

  s.x = 4.0;
  s.y = 0.0;
  CHECK(rescue_erf(s, 5.0) == 0.0);
  s.x = 12.0;
  CHECK(rescue_erf(s, 2.0) == 10.0);
  s.x = 2.0;
  CHECK(rescue_erf(s, 2.0) == 0.0);

  double previous = 0.0;
  for (double d = 0.0; d < 30.0; d += 0.25) {
    s.x = d;
    const double r = rescue_erf(s, 2.0);
    CHECK(r >= previous);
    previous = r;
  }
}

TEST_CASE("trap walls") {
  const auto inside = with_lift(0.0, 1.9, 0.0);
  const auto low = with_lift(0.15, 2.1, 0.3);
  const auto high = with_lift(0.25, 2.1, 0.3);

  const auto free = trap_barrier(inside, low, 2.0, 0.0);
  CHECK(free.x == low.x);
  CHECK(free.y == low.y);

  const auto blocked = trap_barrier(inside, low, 2.0, 0.2);
  CHECK(blocked.radius() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::atan2(blocked.y, blocked.x) == doctest::Approx(std::atan2(0.3, 2.1)));

  const auto climbed = trap_barrier(inside, high, 2.0, 0.2);
  CHECK(climbed.x == high.x);
  CHECK(climbed.y == high.y);

  // Once outside the wall no longer applies.
  const auto outside = with_lift(0.0, 2.5, 0.0);
  const auto further = with_lift(0.0, 2.7, 0.0);
  CHECK(trap_barrier(outside, further, 2.0, 0.2).x == 2.7);
}

TEST_CASE("episodes are reproducible") {
  auto topology = std::make_shared<const policy::NetworkTopology>(policy::build_rescue_controller());
  policy::NeuralPolicy net(topology);
  Rng rng(8);
  std::vector<double> params(156);
  for (auto& v : params) v = 2.0 * rng.normal();
  net.bind_parameters(params);
  CrawlerParams p;
  const TrapParams trap{2.0, 0.1};
  const auto a = run_crawler_episode(p, CrawlerTask::kRescue, trap, net, 400, 99);
  const auto b = run_crawler_episode(p, CrawlerTask::kRescue, trap, net, 400, 99);
  CHECK(a.final_x == b.final_x);
  CHECK(a.final_y == b.final_y);
  CHECK(a.erf_total == b.erf_total);
  CHECK(a.trace.length() == 400);
  CHECK(a.trace.channels() == 18);
  for (std::size_t c = 0; c < 18; ++c) {
    const auto ca = a.trace.channel(c);
    const auto cb = b.trace.channel(c);
    CHECK(std::equal(ca.begin(), ca.end(), cb.begin()));
  }

  auto cart = std::make_shared<const policy::NetworkTopology>(
      policy::build_cartpole_controller(policy::CartPoleVariant::kB));
  policy::NeuralPolicy controller(cart);
  std::vector<double> w(25);
  for (auto& v : w) v = 5.0 * rng.normal();
  controller.bind_parameters(w);
  const auto e1 = run_cartpole_episode(CartPoleParams{}, controller, 2000, true);
  const auto e2 = run_cartpole_episode(CartPoleParams{}, controller, 2000, true);
  CHECK(e1.erf_total == e2.erf_total);
  CHECK(e1.erf_steps == e2.erf_steps);
  CHECK(e1.trace.length() == 2000);
  double sum = 0.0;
  for (double r : e1.erf_steps) sum += r;
  CHECK(sum == e1.erf_total);
}
