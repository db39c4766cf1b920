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

// Small text helpers shared by the CSV writers and readers.

#include <string>
#include <string_view>
#include <vector>

namespace infodrive::text {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

double parse_number(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);

}  // namespace infodrive::text
