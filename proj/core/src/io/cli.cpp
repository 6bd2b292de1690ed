#include "dtc/io/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "dtc/io/csv.hpp"
#include "dtc/io/presets.hpp"
#include "dtc/io/svg.hpp"
#include "dtc/oracle.hpp"
#include "dtc/rng.hpp"

namespace dtc::io {
namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset_id;
    std::string grid;
    std::string out_dir;
    std::string format;
    int realizations = 0;  // 0 = keep config value
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 1;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts, bool sweep_like) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration file");
    cmd->add_option("--preset", opts.preset_id, "built-in configuration id");
    if (sweep_like)
        cmd->add_option("--grid", opts.grid, "override grid resolution, e.g. 20x20");
    cmd->add_option("--realizations", opts.realizations,
                    "override the disorder-realization count");
    cmd->add_option("--seed", opts.seed, "override the master seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_option("--workers", opts.workers,
                    "worker threads for sweeps (results are worker-count independent)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "output formats: csv, svg or both");
}

std::string available_presets() {
    std::string ids;
    for (const Preset& p : preset_catalog()) ids += (ids.empty() ? "" : ", ") + p.id;
    for (const auto& [alias, target] : preset_aliases()) ids += ", " + alias;
    return ids;
}

struct ResolvedRun {
    RunConfig config;
    std::string name;
};

ResolvedRun resolve_config(const CommonOpts& opts, const std::string& default_preset) {
    ResolvedRun run;
    if (!opts.config_path.empty() && !opts.preset_id.empty())
        throw ConfigError("give either --config or --preset, not both");
    if (!opts.config_path.empty()) {
        run.config = load_config_file(opts.config_path);
        run.name = std::filesystem::path(opts.config_path).stem().string();
    } else {
        const std::string id =
            !opts.preset_id.empty() ? opts.preset_id : default_preset;
        if (id.empty())
            throw ConfigError("missing --config or --preset (presets: " +
                              available_presets() + ")");
        const auto preset = find_preset(id);
        if (!preset)
            throw ConfigError("unknown preset '" + id +
                              "' (presets: " + available_presets() + ")");
        run.config = *preset;
        run.name = id;
    }
    if (!run.config.output.name.empty()) run.name = run.config.output.name;
    return run;
}

void apply_grid_override(RunConfig& config, const std::string& grid) {
    const auto x_pos = grid.find('x');
    int nx = 0, ny = 0;
    try {
        if (x_pos == std::string::npos || x_pos == 0 || x_pos + 1 >= grid.size())
            throw std::invalid_argument(grid);
        std::size_t used_a = 0, used_b = 0;
        const std::string a = grid.substr(0, x_pos), b = grid.substr(x_pos + 1);
        nx = std::stoi(a, &used_a);
        ny = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size() || nx < 1 || ny < 1)
            throw std::invalid_argument(grid);
    } catch (const std::exception&) {
        throw ConfigError("--grid must look like 20x20, got '" + grid + "'");
    }
    const auto apply = [](AxisSpec& axis, int count, const char* which) {
        if (axis.is_range()) {
            axis.count = count;
        } else if (static_cast<int>(axis.values.size()) != count) {
            throw ConfigError(std::string("--grid cannot resize the explicit ") + which +
                              "-axis value list");
        }
    };
    if (!config.x) throw ConfigError("--grid needs a sweep with an x axis");
    apply(*config.x, nx, "x");
    if (config.y)
        apply(*config.y, ny, "y");
    else if (ny != 1)
        throw ConfigError("--grid " + grid + " given, but the sweep has no y axis");
}

void apply_overrides(RunConfig& config, const CommonOpts& opts) {
    if (!opts.grid.empty()) apply_grid_override(config, opts.grid);
    if (opts.realizations != 0) {
        if (opts.realizations < 1) throw ConfigError("--realizations must be >= 1");
        config.realizations = opts.realizations;
        config.trace.realizations = opts.realizations;
    }
    if (opts.seed_given) {
        config.master_seed = opts.seed;
        config.trace.master_seed = opts.seed;
    }
    if (!opts.format.empty()) {
        if (opts.format == "csv")
            config.output.format = OutputFormat::Csv;
        else if (opts.format == "svg")
            config.output.format = OutputFormat::Svg;
        else if (opts.format == "both")
            config.output.format = OutputFormat::Both;
        else
            throw ConfigError("--format must be csv, svg or both, got '" + opts.format +
                              "'");
    }
    // output directory precedence: flag, config, environment, cwd
    std::string dir = !opts.out_dir.empty() ? opts.out_dir : config.output.directory;
    if (dir.empty())
        if (const char* env = std::getenv("DTCSIM_OUT")) dir = env;
    if (dir.empty()) dir = ".";
    config.output.directory = dir;
    config.validate();
}

void require_kind(const RunConfig& config, RunKind kind, const std::string& command) {
    if (config.kind != kind)
        throw ConfigError("the '" + command + "' command needs a config of kind \"" +
                          run_kind_name(kind) + "\", got \"" +
                          run_kind_name(config.kind) + "\"");
}

struct Emitted {
    std::vector<std::string> paths;
};

Emitted emit(const RunConfig& config, const std::string& name,
             const std::string& command, const std::vector<CellFailure>& failures,
             const std::string& csv, const std::string& svg) {
    std::filesystem::create_directories(config.output.directory);
    const std::string base =
        (std::filesystem::path(config.output.directory) / name).string();
    Emitted emitted;
    const OutputFormat format = config.output.format;
    if (format != OutputFormat::Svg) {
        write_text_file(base + ".csv", csv);
        emitted.paths.push_back(base + ".csv");
    }
    if (format != OutputFormat::Csv) {
        write_text_file(base + ".svg", svg);
        emitted.paths.push_back(base + ".svg");
    }
    write_text_file(base + ".provenance.json",
                    provenance_json(config, command, failures, true));
    emitted.paths.push_back(base + ".provenance.json");
    return emitted;
}

int run_sweep_command(const std::string& command, const CommonOpts& opts) {
    ResolvedRun run = resolve_config(opts, "");
    require_kind(run.config, command == "purity" ? RunKind::Purity : RunKind::Sweep,
                 command);
    apply_overrides(run.config, opts);

    const SweepPlan plan = run.config.to_sweep_plan();
    const std::size_t nx = plan.x.values.size();
    const std::size_t ny = plan.y ? plan.y->values.size() : 1;
    std::printf("%s '%s': %zux%zu cells, %d realizations, %s, workers=%d\n",
                command.c_str(), run.name.c_str(), nx, ny, plan.realizations,
                observable_name(plan.observable).c_str(), opts.workers);
    std::fflush(stdout);

    const PhaseDiagram diagram = run_sweep(plan, opts.workers);

    const std::string metadata =
        provenance_json(run.config, command, diagram.failures, false);
    const Emitted emitted =
        emit(run.config, run.name, command, diagram.failures, diagram_csv(diagram),
             diagram_svg(diagram, run.name + ": " + diagram.observable, metadata));
    for (const std::string& path : emitted.paths) std::printf("wrote %s\n", path.c_str());

    if (!diagram.failures.empty()) {
        for (const CellFailure& f : diagram.failures)
            std::fprintf(stderr, "cell (%zu,%zu) [%s=%g%s%s]: %s\n", f.ix, f.iy,
                         diagram.x_param.c_str(), diagram.x_values[f.ix],
                         diagram.y_param.empty() ? "" : (", " + diagram.y_param).c_str(),
                         diagram.y_param.empty()
                             ? ""
                             : ("=" + std::to_string(diagram.y_values[f.iy])).c_str(),
                         f.message.c_str());
        std::fprintf(stderr, "%zu of %zu cells failed\n", diagram.failures.size(),
                     nx * ny);
        return 3;
    }
    return 0;
}

int run_trace_command(const std::string& command, const CommonOpts& opts) {
    ResolvedRun run = resolve_config(opts, command == "protocol" ? "fig9" : "");
    require_kind(run.config, RunKind::Trace, command);
    apply_overrides(run.config, opts);

    const RunConfig& config = run.config;
    std::printf("%s '%s': %d periods, %d realizations, sampling=%s\n", command.c_str(),
                run.name.c_str(), config.trace.n_periods, config.trace.realizations,
                sampling_mode_name(config.trace.sampling).c_str());
    std::fflush(stdout);

    std::vector<TrajectoryRecord> records;
    records.reserve(static_cast<std::size_t>(config.trace.realizations));
    for (int r = 0; r < config.trace.realizations; ++r) {
        const DisorderRealization real = sample_disorder(
            config.spec,
            derive_seed(config.trace.master_seed, 0, static_cast<std::size_t>(r)));
        records.push_back(run_protocol(config.model, config.spec, real, config.protocol,
                                       config.initial, config.trace.n_periods,
                                       config.trace.sampling));
    }
    const TrajectoryRecord averaged =
        records.size() == 1 ? records.front() : average_trajectories(records);

    const std::string metadata = provenance_json(config, command, {}, false);
    const Emitted emitted = emit(config, run.name, command, {},
                                 trajectory_csv(averaged),
                                 trajectory_svg(averaged, run.name, metadata));
    for (const std::string& path : emitted.paths) std::printf("wrote %s\n", path.c_str());
    return 0;
}

int run_verify_command() {
    const OracleReport report = run_all_oracles();
    int passed = 0;
    for (const OracleCheck& check : report.checks) {
        std::printf("[%s] %-55s deviation %.3e %s %.0e\n",
                    check.pass ? "PASS" : "FAIL", check.name.c_str(), check.deviation,
                    check.expect_below ? "<" : ">", check.tolerance);
        if (check.pass) ++passed;
    }
    std::printf("verify: %d/%zu checks passed\n", passed, report.checks.size());
    return report.all_pass ? 0 : 3;
}

int run_presets_command() {
    for (const Preset& preset : preset_catalog())
        std::printf("%-8s %-7s %s\n", preset.id.c_str(),
                    run_kind_name(preset.config.kind).c_str(),
                    preset.description.c_str());
    for (const auto& [alias, target] : preset_aliases())
        std::printf("%-8s alias for %s\n", alias.c_str(), target.c_str());
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"dtcsim: simulator for short disordered periodically driven spin "
                 "chains (order-parameter sweeps, trajectories, purity maps)"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run a parameter sweep and write diagram CSV/SVG");
    add_common_options(sweep, opts, true);
    CLI::App* trace = app.add_subcommand(
        "trace", "run one drive protocol and write the trajectory CSV/SVG");
    add_common_options(trace, opts, false);
    CLI::App* protocol = app.add_subcommand(
        "protocol", "run the axis-switching rotation protocol (default preset fig9)");
    add_common_options(protocol, opts, false);
    CLI::App* purity = app.add_subcommand(
        "purity", "run Bloch-averaged purity maps or cuts");
    add_common_options(purity, opts, true);
    app.add_subcommand("verify", "run the independent-oracle suite");
    app.add_subcommand("presets", "list built-in configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "verify") return run_verify_command();
        if (command == "presets") return run_presets_command();
        if (command == "trace" || command == "protocol")
            return run_trace_command(command, opts);
        return run_sweep_command(command, opts);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

}  // namespace dtc::io
