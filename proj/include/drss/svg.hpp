#ifndef DRSS_SVG_HPP
#define DRSS_SVG_HPP

#include <string>
#include <vector>

namespace drss {

// Standalone SVG line charts for the sweep and leakage outputs.
//
// Emission is a pure function of the chart data: fixed canvas, fixed
// palette, fixed tick policy, no timestamps or environment-dependent
// content. Equal data produces byte-identical files.

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // same length as x
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;

  std::string to_svg() const;
};

}  // namespace drss

#endif  // DRSS_SVG_HPP
