#pragma once
#include <string>
#include <vector>

#include "dtc/io/config.hpp"

// Tabular result emission. CSV files are RFC-4180 (CRLF line endings, no quoting
// needed for the schemas used here); numbers are printed with shortest
// round-trip precision so re-reads are exact and re-runs diff cleanly.
namespace dtc::io {

// Shortest representation that parses back to exactly the same double.
std::string format_double(double value);

// Header "x_param,y_param,value,stderr,n_realizations"; rows ordered y-outer,
// x-inner. 1D sweeps carry y_param = 0 for every row.
std::string diagram_csv(const PhaseDiagram& diagram);

// Header "period,tag,segment,s<i>_x,s<i>_y,s<i>_z...,end_length"; one row per sample.
std::string trajectory_csv(const TrajectoryRecord& record);

// Provenance block: tool name/version, the command, the fully-resolved config echo,
// and any per-cell failures. The timestamp is optional so that files meant to be
// bit-identical across re-runs (SVG metadata) can omit it.
std::string provenance_json(const RunConfig& config, const std::string& command,
                            const std::vector<CellFailure>& failures,
                            bool include_timestamp);

std::string tool_version();

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dtc::io
