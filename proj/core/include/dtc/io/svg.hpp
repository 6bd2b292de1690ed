#pragma once
#include <string>

#include "dtc/io/config.hpp"

// Self-contained SVG figures (no external tooling): heatmaps for 2D diagrams, line
// plots for 1D / two-row diagrams and trajectories. Every file carries the
// provenance JSON in a <metadata> block, and the heatmap records its color-scale
// bounds there (the scale is normalized to the data range).
namespace dtc::io {

// Heatmap when the diagram has >= 3 rows, one line per row otherwise.
std::string diagram_svg(const PhaseDiagram& diagram, const std::string& title,
                        const std::string& metadata_json);

// Site-1 spin components and vector length against time (in periods).
std::string trajectory_svg(const TrajectoryRecord& record, const std::string& title,
                           const std::string& metadata_json);

}  // namespace dtc::io
