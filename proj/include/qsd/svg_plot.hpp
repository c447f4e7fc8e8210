#pragma once

#include <string>
#include <vector>

// Minimal static SVG line plots with a logarithmic cost axis: theory curves
// as polylines, Monte Carlo batches as markers with one-standard-deviation
// error bars.  No plotting library; the SVG is emitted as text.

namespace qsd {

struct PlotPoint {
  double x;
  double y;
  double y_err = 0.0;  // error bar half-height; 0 draws no bar
};

struct PlotSeries {
  std::string label;
  bool line = true;  // polyline when true, markers when false
  std::vector<PlotPoint> points;
};

struct PlotSpec {
  std::string x_label;
  std::string y_label = "error probability";
  std::string title;
  std::vector<PlotSeries> series;
};

/// Writes the figure; throws std::runtime_error (before creating the file)
/// if no series contains a positive-cost point.
void write_svg_plot(const PlotSpec& spec, const std::string& path);

}  // namespace qsd
