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
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "infodrive/plot.hpp"
#include "infodrive/text.hpp"
#include "infodrive/trace_io.hpp"

using namespace infodrive;

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(text::format_number(0.0) == "0");
  CHECK(text::format_number(-0.0) == "0");
  CHECK(text::format_number(0.25) == "0.25");
  CHECK(text::format_number(0.0125) == "0.0125");
  CHECK(text::format_number(-3.0) == "-3");
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(rng.normal(), static_cast<int>(rng.below(80)) - 40);
    REQUIRE(text::parse_number(text::format_number(v)) == v);
  }
  CHECK(text::parse_number(" 1.5\r") == 1.5);
  CHECK_THROWS_AS(text::parse_number("1.5x"), ConfigError);
  CHECK_THROWS_AS(text::parse_number(""), ConfigError);
}

TEST_CASE("split keeps empty cells") {
  CHECK(text::split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(text::split("", ',') == std::vector<std::string>{""});
  CHECK(text::split("x,", ',') == std::vector<std::string>{"x", ""});
}

TEST_CASE("trace CSV round trip") {
  info::SensorTrace trace({{-1.0, 1.0}, {0.0, 3.5}}, {"angle", "speed"});
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    trace.push_back(std::vector<double>{2.0 * rng.uniform() - 1.0, 3.5 * rng.uniform()});
  }
  std::stringstream buffer;
  info::write_trace_csv(buffer, trace);
  CHECK(buffer.str().rfind("step,angle:-1:1,speed:0:3.5\n0,", 0) == 0);
  const auto back = info::read_trace_csv(buffer);
  REQUIRE(back.channels() == 2);
  REQUIRE(back.length() == 50);
  CHECK(back.name(1) == "speed");
  CHECK(back.range(1).hi == 3.5);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t t = 0; t < 50; ++t) CHECK(back.channel(c)[t] == trace.channel(c)[t]);
  }
}

TEST_CASE("trace CSV without a step column and with errors") {
  std::istringstream plain("a:0:1,b:0:1\n0.5,0.25\n0.75,1\n");
  const auto t = info::read_trace_csv(plain);
  CHECK(t.length() == 2);
  CHECK(t.channel(1)[1] == 1.0);

  std::istringstream bad_header("a:0,b:0:1\n");
  CHECK_THROWS_AS(info::read_trace_csv(bad_header), ConfigError);
  std::istringstream ragged("step,a:0:1\n0,0.5,0.5\n");
  CHECK_THROWS_AS(info::read_trace_csv(ragged), ConfigError);
  std::istringstream empty("");
  CHECK_THROWS_AS(info::read_trace_csv(empty), ConfigError);
}

TEST_CASE("svg charts") {
  plot::Chart chart{"ERF", "batch", "reward", {{"gamma=0", {0.0, 1.0, 4.0}, {0.1, 0.2, 0.3}}}};
  const auto svg = plot::render_svg({chart, chart});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("gamma=0") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);

  plot::Chart flat{"flat", "batch", "y", {{"c", {2.0, 2.0}, {}}}};
  const auto flat_svg = plot::render_svg({flat});
  CHECK(flat_svg.find("nan") == std::string::npos);
  CHECK(flat_svg.find("inf") == std::string::npos);
  const auto empty_svg = plot::render_svg({plot::Chart{"none", "batch", "y", {}}});
  CHECK(empty_svg.find("<svg") != std::string::npos);
}
