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

// Minimal static SVG line charts for learning curves.

#include <string>
#include <vector>

namespace infodrive::plot {

struct Series {
  std::string label;
  std::vector<double> y;
  /// Optional symmetric band (same length as y) drawn around the line.
  std::vector<double> band;
};

struct Chart {
  std::string title;
  std::string x_label = "batch";
  std::string y_label;
  std::vector<Series> series;
};

/// Renders charts stacked vertically into one SVG document. x runs over
/// 1..n for each series.
std::string render_svg(const std::vector<Chart>& charts);

}  // namespace infodrive::plot
