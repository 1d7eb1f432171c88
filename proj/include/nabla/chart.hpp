#pragma once

// Minimal SVG line chart: polylines over a shared axis box with a legend.

#include <string>
#include <vector>

namespace nabla {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label = "k";
  std::string y_label = "y(k)";
  int width = 820;
  int height = 520;
};

/// Deterministic text output: identical input gives identical bytes.
std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartOptions& options);

}  // namespace nabla
