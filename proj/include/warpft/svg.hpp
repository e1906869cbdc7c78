#pragma once

#include <string>
#include <vector>

namespace warpft {

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 480;
};

// Renders one curve as a static SVG document with a framed plot area and
// min/max tick labels. Diagnostic output only. Points with a nonpositive
// value on a log-scaled axis are dropped.
std::string render_polyline_svg(const std::vector<double>& x,
                                const std::vector<double>& y,
                                const PlotOptions& opt);

}  // namespace warpft
