/* Copyright (C) 2026 the mrftest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <sstream>

#include "mrftest/io.hpp"

namespace mrftest {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 56;

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

double map_x(double x) { return kMargin + x * (kWidth - 2 * kMargin); }
double map_y(double y) { return kHeight - kMargin - y * (kHeight - 2 * kMargin); }

}  // namespace

void write_svg_curves(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const NamedCurves& curves, bool use_pr) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes box and gridlines
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
     << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 1; i < 5; ++i) {
    const double t = i / 5.0;
    os << "<line x1=\"" << map_x(t) << "\" y1=\"" << map_y(0) << "\" x2=\""
       << map_x(t) << "\" y2=\"" << map_y(1)
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<line x1=\"" << map_x(0) << "\" y1=\"" << map_y(t) << "\" x2=\""
       << map_x(1) << "\" y2=\"" << map_y(t)
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << map_x(t) << "\" y=\"" << kHeight - kMargin + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << t << "</text>\n";
    os << "<text x=\"" << kMargin - 8 << "\" y=\"" << map_y(t) + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << t << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"15\" "
     << "text-anchor=\"middle\">" << title << "</text>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kHeight / 2 << ")\">" << ylabel << "</text>\n";

  std::size_t color = 0;
  for (const auto& [name, c] : curves) {
    const auto& pts = use_pr ? c.pr : c.roc;
    if (use_pr && !c.pr_defined) continue;
    if (pts.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\""
       << kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))]
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) os << map_x(x) << ',' << map_y(y) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 110 << "\" y=\""
       << kMargin + 16 + 16 * color << "\" font-size=\"12\" fill=\""
       << kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))] << "\">"
       << name << "</text>\n";
    ++color;
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

}  // namespace mrftest
