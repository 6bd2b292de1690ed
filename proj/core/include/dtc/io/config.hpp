#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtc/sweep.hpp"

// Run configuration: a strict JSON document (unknown keys rejected, errors reported
// with file:line and a JSON-pointer path). The exact schema is documented in the
// README; serialize_config() emits the fully-resolved form used for provenance, and
// re-parsing that emission reproduces the run bit-exactly.
namespace dtc::io {

// Thrown for malformed or invalid configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RunKind { Sweep, Trace, Purity, Verify };
enum class OutputFormat { Csv, Svg, Both };

std::string run_kind_name(RunKind kind);
std::string output_format_name(OutputFormat format);
std::string sampling_mode_name(SamplingMode mode);

// A sweep axis as written in configs: either an inclusive linspace range or an
// explicit value list.
struct AxisSpec {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int count = 0;                       // used when `values` is empty
    std::vector<double> values;          // explicit list, wins over the range

    bool is_range() const { return values.empty(); }
    std::vector<double> materialize() const;  // throws ConfigError on bad ranges
};

struct TraceConfig {
    int n_periods = 200;
    SamplingMode sampling = SamplingMode::EveryPeriod;
    int realizations = 50;
    std::uint64_t master_seed = 1;
};

struct OutputConfig {
    std::string directory;  // empty -> --out flag, env default, or "."
    OutputFormat format = OutputFormat::Both;
    std::string name;       // output file stem; empty -> preset id / config stem
};

struct RunConfig {
    RunKind kind = RunKind::Sweep;
    Model model = Model::Ising;
    ChainSpec spec;
    DriveProtocol protocol;
    InitialStateSpec initial = ProductZ{{true, false, true, false}};

    // sweep/purity section
    std::optional<AxisSpec> x;
    std::optional<AxisSpec> y;
    Observable observable = TimeAverageZ{};
    int realizations = 50;
    std::uint64_t master_seed = 1;
    int ell = 100;
    int n_periods = 200;

    TraceConfig trace;
    OutputConfig output;

    SweepPlan to_sweep_plan() const;  // throws ConfigError if no x axis
    void validate() const;            // throws ConfigError
};

// Strict parse; `source_name` is used in error messages (e.g. the file path).
RunConfig parse_config(const std::string& text, const std::string& source_name);
RunConfig load_config_file(const std::string& path);

// Fully-resolved JSON echo of the configuration (2-space indent, stable key order).
std::string serialize_config(const RunConfig& config);

}  // namespace dtc::io
