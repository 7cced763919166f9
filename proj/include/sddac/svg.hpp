#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sddac {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};

// Self-contained SVG line plot; log_x plots against log10(x) and drops
// non-positive x. Non-finite points break the line.
std::string line_plot_svg(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x = false);

}  // namespace sddac
