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

#include "infodrive/trace_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "infodrive/text.hpp"

namespace infodrive::info {

void write_trace_csv(std::ostream& out, const SensorTrace& trace) {
  out << "step";
  for (std::size_t c = 0; c < trace.channels(); ++c) {
    const auto r = trace.range(c);
    out << ',' << trace.name(c) << ':' << text::format_number(r.lo) << ':'
        << text::format_number(r.hi);
  }
  out << '\n';
  for (std::size_t t = 0; t < trace.length(); ++t) {
    out << t;
    for (std::size_t c = 0; c < trace.channels(); ++c) {
      out << ',' << text::format_number(trace.channel(c)[t]);
    }
    out << '\n';
  }
}

SensorTrace read_trace_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "trace csv: missing header row");
  auto header = text::split(line, ',');
  const bool has_step = !header.empty() && header.front() == "step";
  if (has_step) header.erase(header.begin());
  require(!header.empty(), "trace csv: no channel columns");

  std::vector<ChannelRange> ranges;
  std::vector<std::string> names;
  for (const auto& cell : header) {
    const auto parts = text::split(cell, ':');
    require(parts.size() == 3, "trace csv: header cell '" + cell + "' is not name:lo:hi");
    names.push_back(parts[0]);
    ranges.push_back({text::parse_number(parts[1]), text::parse_number(parts[2])});
  }
  SensorTrace trace(ranges, names);
  std::vector<double> row(ranges.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = text::split(line, ',');
    if (has_step && !cells.empty()) cells.erase(cells.begin());
    require(cells.size() == ranges.size(),
            "trace csv: line " + std::to_string(line_no) + " has the wrong number of columns");
    for (std::size_t c = 0; c < cells.size(); ++c) row[c] = text::parse_number(cells[c]);
    trace.push_back(row);
  }
  return trace;
}

}  // namespace infodrive::info
