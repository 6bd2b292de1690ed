#pragma once

// Command-line surface. Subcommands: sweep, trace, protocol, purity, verify,
// presets. Exit codes: 0 success, 2 invalid configuration or usage, 3 numerical or
// runtime failure.
namespace dtc::io {

int cli_main(int argc, const char* const* argv);

}  // namespace dtc::io
