#pragma once

#include <string>
#include <vector>

#include "drpkit/io/files.hpp"

namespace drpkit::io {

struct PlotSeries {
  std::string label;
  CoverageTable table;
};

/// Standalone SVG: unit axes, dashed diagonal, one polyline and one shaded
/// band per series, legend. Throws Error on an empty series list.
std::string render_coverage_svg(const std::vector<PlotSeries>& series, const std::string& title = "");

/// Legend text for a table: its `label` metadata, else `method policy`.
std::string default_label(const CoverageTable& table);

}  // namespace drpkit::io
