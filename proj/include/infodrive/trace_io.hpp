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

// CSV form of a SensorTrace.
//
//   step,<name>:<lo>:<hi>,<name>:<lo>:<hi>,...
//   0,<v>,<v>,...
//
// The step column is optional on input.

#include <iosfwd>

#include "infodrive/infotheory.hpp"

namespace infodrive::info {

void write_trace_csv(std::ostream& out, const SensorTrace& trace);
SensorTrace read_trace_csv(std::istream& in);

}  // namespace infodrive::info
