#pragma once

#include <string>
#include <vector>

namespace pr {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

// Self-contained SVG 1.1 polyline chart with axes, ticks and a legend.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

}  // namespace pr
