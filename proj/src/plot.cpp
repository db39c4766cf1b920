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

#include "infodrive/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace infodrive::plot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 300.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 40.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void render_chart(std::ostringstream& svg, const Chart& chart, double y0) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t n = 1;
  for (const auto& s : chart.series) {
    n = std::max(n, s.y.size());
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double b = s.band.size() == s.y.size() ? s.band[i] : 0.0;
      lo = std::min(lo, s.y[i] - b);
      hi = std::max(hi, s.y[i] + b);
    }
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) hi = lo + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](std::size_t i) {
    return kLeft + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0) * pw;
  };
  auto py = [&](double v) { return y0 + kTop + (1.0 - (v - lo) / (hi - lo)) * ph; };

  svg << "<text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + 20) << "\" font-size=\"14\">"
      << escape(chart.title) << "</text>\n";
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + kTop) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    svg << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(v) + 4)
        << "\" font-size=\"10\" text-anchor=\"end\">" << tick(v) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + kHeight - 10)
      << "\" font-size=\"10\">1</text>\n";
  svg << "<text x=\"" << fmt(kLeft + pw) << "\" y=\"" << fmt(y0 + kHeight - 10)
      << "\" font-size=\"10\" text-anchor=\"end\">" << n << "</text>\n";
  svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(y0 + kHeight - 10)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  svg << "<text x=\"14\" y=\"" << fmt(y0 + kTop + ph / 2) << "\" font-size=\"11\" transform=\"rotate(-90 14 "
      << fmt(y0 + kTop + ph / 2) << ")\" text-anchor=\"middle\">" << escape(chart.y_label)
      << "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& series = chart.series[s];
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    if (series.y.empty()) continue;
    if (series.band.size() == series.y.size()) {
      svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < series.y.size(); ++i) {
        svg << fmt(px(i)) << ',' << fmt(py(series.y[i] + series.band[i])) << ' ';
      }
      for (std::size_t i = series.y.size(); i-- > 0;) {
        svg << fmt(px(i)) << ',' << fmt(py(series.y[i] - series.band[i])) << ' ';
      }
      svg << "\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < series.y.size(); ++i) {
      svg << fmt(px(i)) << ',' << fmt(py(series.y[i])) << ' ';
    }
    svg << "\"/>\n";
    const double ly = y0 + kTop + 14.0 * static_cast<double>(s) + 8.0;
    svg << "<line x1=\"" << fmt(kWidth - kRight + 10) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(kWidth - kRight + 30) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(kWidth - kRight + 34) << "\" y=\"" << fmt(ly + 4)
        << "\" font-size=\"10\">" << escape(series.label) << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const std::vector<Chart>& charts) {
  std::ostringstream svg;
  const double total = kHeight * static_cast<double>(std::max<std::size_t>(charts.size(), 1));
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(total) << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t c = 0; c < charts.size(); ++c) {
    render_chart(svg, charts[c], kHeight * static_cast<double>(c));
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace infodrive::plot
