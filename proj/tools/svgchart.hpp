// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_TOOLS_SVGCHART_HPP
#define SUBSETX_TOOLS_SVGCHART_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace svgchart {

struct BarSeries {
  std::string name;
  std::string color;
  std::vector<double> value;
  std::vector<double> lo;  // error bar bottoms (may be empty)
  std::vector<double> hi;  // error bar tops (may be empty)
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

/// Static grouped bar chart with optional error bars; values on [0, y_max].
inline std::string grouped_bar_chart(const std::string& title, const std::string& y_label,
                                     const std::vector<std::string>& groups,
                                     const std::vector<BarSeries>& series, double y_max = 1.0) {
  const double width = 640, height = 400;
  const double left = 60, right = 20, top = 50, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const std::size_t G = groups.size();
  const std::size_t S = series.size();

  auto x_of = [&](std::size_t g, std::size_t s) {
    double slot = plot_w / static_cast<double>(G);
    double bar = slot * 0.8 / static_cast<double>(S);
    return left + slot * static_cast<double>(g) + slot * 0.1 + bar * static_cast<double>(s);
  };
  auto y_of = [&](double v) { return top + plot_h * (1.0 - v / y_max); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";

  for (int tick = 0; tick <= 5; ++tick) {
    double v = y_max * tick / 5.0;
    double y = y_of(v);
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(width - right) +
           "\" y2=\"" + num(y) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  svg += "<text x=\"16\" y=\"" + num(top + plot_h / 2) + "\" transform=\"rotate(-90 16 " +
         num(top + plot_h / 2) + ")\" text-anchor=\"middle\">" + y_label + "</text>\n";

  double slot = plot_w / static_cast<double>(G);
  double bar = slot * 0.8 / static_cast<double>(S);
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t s = 0; s < S; ++s) {
      double v = series[s].value[g];
      double x = x_of(g, s);
      svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y_of(v)) + "\" width=\"" + num(bar * 0.9) +
             "\" height=\"" + num(y_of(0) - y_of(v)) + "\" fill=\"" + series[s].color + "\"/>\n";
      if (!series[s].lo.empty()) {
        double cx = x + bar * 0.45;
        double ylo = y_of(series[s].lo[g]);
        double yhi = y_of(series[s].hi[g]);
        svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ylo) + "\" x2=\"" + num(cx) +
               "\" y2=\"" + num(yhi) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + num(cx - 4) + "\" y1=\"" + num(ylo) + "\" x2=\"" + num(cx + 4) +
               "\" y2=\"" + num(ylo) + "\" stroke=\"black\"/>\n";
        svg += "<line x1=\"" + num(cx - 4) + "\" y1=\"" + num(yhi) + "\" x2=\"" + num(cx + 4) +
               "\" y2=\"" + num(yhi) + "\" stroke=\"black\"/>\n";
      }
    }
    svg += "<text x=\"" + num(left + slot * (static_cast<double>(g) + 0.5)) + "\" y=\"" +
           num(height - bottom + 18) + "\" text-anchor=\"middle\">" + groups[g] + "</text>\n";
  }

  double lx = left + 8;
  for (std::size_t s = 0; s < S; ++s) {
    double ly = top + 6 + 18.0 * static_cast<double>(s);
    svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
           series[s].color + "\"/>\n";
    svg += "<text x=\"" + num(lx + 18) + "\" y=\"" + num(ly + 10) + "\">" + series[s].name +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace svgchart

#endif
