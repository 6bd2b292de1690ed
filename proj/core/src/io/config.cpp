#include "dtc/io/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string_view>

#include "json.hpp"

namespace dtc::io {
namespace {

using Json = nlohmann::ordered_json;

// ---- path -> line lookup ------------------------------------------------------
//
// A tiny JSON lexer that records the line of every key and value, addressed by
// JSON-pointer-like paths ("/protocol/events/0/axis"). Used to make schema errors
// line-precise; the actual parsing is nlohmann's.

struct LineIndex {
    std::map<std::string, int> lines;

    int line_of(std::string path) const {
        for (;;) {
            const auto it = lines.find(path);
            if (it != lines.end()) return it->second;
            const auto slash = path.find_last_of('/');
            if (slash == std::string::npos) return 1;
            path.resize(slash);
            if (path.empty()) {
                const auto root = lines.find("");
                return root != lines.end() ? root->second : 1;
            }
        }
    }
};

LineIndex build_line_index(const std::string& text) {
    LineIndex idx;
    struct Frame {
        bool is_object;
        int index = 0;
        std::string path;
        std::string pending_key;
        bool has_pending = false;
    };
    std::vector<Frame> stack;
    int line = 1;

    const auto current_value_path = [&]() -> std::string {
        if (stack.empty()) return "";
        Frame& top = stack.back();
        if (top.is_object) return top.path + "/" + top.pending_key;
        return top.path + "/" + std::to_string(top.index);
    };
    const auto complete_value = [&] {
        if (stack.empty()) return;
        Frame& top = stack.back();
        if (top.is_object)
            top.has_pending = false;
        else
            ++top.index;
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == '"') {
            // scan the string, tracking escapes
            std::string content;
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < n) {
                    content += text[i + 1];  // good enough for path bookkeeping
                    i += 2;
                } else {
                    if (text[i] == '\n') ++line;
                    content += text[i];
                    ++i;
                }
            }
            ++i;  // closing quote
            if (!stack.empty() && stack.back().is_object && !stack.back().has_pending) {
                Frame& top = stack.back();
                top.pending_key = content;
                top.has_pending = true;
                idx.lines.emplace(top.path + "/" + content, line);
            } else {
                idx.lines.emplace(current_value_path(), line);
                complete_value();
            }
        } else if (c == '{' || c == '[') {
            const std::string path = current_value_path();
            idx.lines.emplace(path, line);
            stack.push_back({c == '{', 0, path, "", false});
            ++i;
        } else if (c == '}' || c == ']') {
            if (!stack.empty()) stack.pop_back();
            complete_value();
            ++i;
        } else if (c == ':' || c == ',' || c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else {
            // scalar literal (number, true, false, null)
            idx.lines.emplace(current_value_path(), line);
            while (i < n && std::string_view(",]}: \t\r\n").find(text[i]) ==
                                std::string_view::npos)
                ++i;
            complete_value();
        }
    }
    return idx;
}

// ---- validation helpers ---------------------------------------------------------

struct Ctx {
    std::string file;
    LineIndex idx;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        throw ConfigError(file + ":" + std::to_string(idx.line_of(path)) + ": " + msg +
                          " (at " + (path.empty() ? "/" : path) + ")");
    }
};

class Section {
  public:
    Section(const Ctx& ctx, const Json& obj, std::string path,
            std::initializer_list<const char*> allowed)
        : ctx_(ctx), obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) ctx_.fail(path_, "expected an object");
        std::set<std::string> allowed_set(allowed.begin(), allowed.end());
        for (const auto& item : obj_.items())
            if (!allowed_set.count(item.key()))
                ctx_.fail(path_ + "/" + item.key(), "unknown key '" + item.key() + "'");
    }

    bool has(const char* key) const { return obj_.contains(key); }
    std::string child(const char* key) const { return path_ + "/" + key; }
    const Json& raw(const char* key) const { return obj_.at(key); }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        const Json& v = obj_.at(key);
        if (!v.is_number()) ctx_.fail(child(key), "expected a number");
        return v.get<double>();
    }
    int integer(const char* key, int fallback) const {
        if (!has(key)) return fallback;
        const Json& v = obj_.at(key);
        if (!v.is_number_integer() && !v.is_number_unsigned())
            ctx_.fail(child(key), "expected an integer");
        return v.get<int>();
    }
    std::uint64_t seed(const char* key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const Json& v = obj_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            ctx_.fail(child(key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    std::string text(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const Json& v = obj_.at(key);
        if (!v.is_string()) ctx_.fail(child(key), "expected a string");
        return v.get<std::string>();
    }

    Axis axis(const char* key, Axis fallback) const {
        if (!has(key)) return fallback;
        const std::string s = text(key, "");
        if (s.size() != 1 || (s[0] != 'x' && s[0] != 'y' && s[0] != 'z'))
            ctx_.fail(child(key), "expected \"x\", \"y\" or \"z\"");
        return axis_from_letter(s[0]);
    }

  private:
    const Ctx& ctx_;
    const Json& obj_;
    std::string path_;
};

std::array<double, 3> parse_triplet(const Ctx& ctx, const Json& v,
                                    const std::string& path) {
    if (!v.is_array() || v.size() != 3) ctx.fail(path, "expected an array of 3 numbers");
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!v[i].is_number())
            ctx.fail(path + "/" + std::to_string(i), "expected a number");
        out[i] = v[i].get<double>();
    }
    return out;
}

ChainSpec parse_chain(const Ctx& ctx, const Json& j) {
    Section s(ctx, j, "/chain",
              {"n_sites", "geometry", "j_mean", "j_width", "field_mean", "field_width"});
    ChainSpec spec;
    spec.n_sites = s.integer("n_sites", spec.n_sites);
    if (s.has("geometry")) {
        const std::string g = s.text("geometry", "open");
        if (g == "open")
            spec.geometry = Geometry::OpenChain;
        else if (g == "loop")
            spec.geometry = Geometry::ClosedLoop;
        else
            ctx.fail(s.child("geometry"), "expected \"open\" or \"loop\"");
    }
    spec.j_mean = s.number("j_mean", spec.j_mean);
    spec.j_width = s.number("j_width", spec.j_width);
    if (s.has("field_mean"))
        spec.field_mean = parse_triplet(ctx, s.raw("field_mean"), s.child("field_mean"));
    if (s.has("field_width"))
        spec.field_width =
            parse_triplet(ctx, s.raw("field_width"), s.child("field_width"));
    return spec;
}

DriveProtocol parse_protocol(const Ctx& ctx, const Json& j) {
    Section s(ctx, j, "/protocol",
              {"floquet_axis", "floquet_error", "h2i_count", "h2i_axis", "h2i_error",
               "h2i_targets", "events"});
    DriveProtocol protocol;
    protocol.floquet_axis = s.axis("floquet_axis", protocol.floquet_axis);
    protocol.floquet_error = s.number("floquet_error", protocol.floquet_error);
    protocol.h2i_count = s.integer("h2i_count", protocol.h2i_count);
    protocol.h2i_axis = s.axis("h2i_axis", protocol.h2i_axis);
    protocol.h2i_error = s.number("h2i_error", protocol.h2i_error);
    if (s.has("h2i_targets")) {
        const Json& arr = s.raw("h2i_targets");
        if (!arr.is_array()) ctx.fail(s.child("h2i_targets"), "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number_integer() && !arr[i].is_number_unsigned())
                ctx.fail(s.child("h2i_targets") + "/" + std::to_string(i),
                         "expected an integer site index");
            protocol.h2i_targets.push_back(arr[i].get<int>());
        }
    }
    if (s.has("events")) {
        const Json& arr = s.raw("events");
        if (!arr.is_array()) ctx.fail(s.child("events"), "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string epath = s.child("events") + "/" + std::to_string(i);
            Section e(ctx, arr[i], epath, {"period", "action", "axis", "angle"});
            if (!e.has("period")) ctx.fail(epath, "missing key 'period'");
            if (!e.has("action")) ctx.fail(epath, "missing key 'action'");
            if (!e.has("axis")) ctx.fail(epath, "missing key 'axis'");
            ProtocolEvent event;
            event.period_index = e.integer("period", 0);
            const std::string action = e.text("action", "");
            const Axis axis = e.axis("axis", Axis::X);
            if (action == "rotate") {
                if (!e.has("angle")) ctx.fail(epath, "'rotate' requires 'angle'");
                event.action = GlobalRotation{axis, e.number("angle", 0.0)};
            } else if (action == "set_floquet_axis") {
                if (e.has("angle")) ctx.fail(e.child("angle"), "unexpected 'angle'");
                event.action = SetFloquetAxis{axis};
            } else if (action == "set_h2i_axis") {
                if (e.has("angle")) ctx.fail(e.child("angle"), "unexpected 'angle'");
                event.action = SetH2IAxis{axis};
            } else {
                ctx.fail(e.child("action"),
                         "expected \"rotate\", \"set_floquet_axis\" or \"set_h2i_axis\"");
            }
            protocol.events.push_back(std::move(event));
        }
    }
    return protocol;
}

InitialStateSpec parse_initial(const Ctx& ctx, const Json& j) {
    Section s(ctx, j, "/initial_state", {"type", "up", "theta", "chi"});
    const std::string type = s.text("type", "");
    if (type == "pattern") {
        if (!s.has("up")) ctx.fail("/initial_state", "'pattern' requires 'up'");
        if (s.has("theta") || s.has("chi"))
            ctx.fail("/initial_state", "'pattern' takes no Bloch angles");
        const std::string up = s.text("up", "");
        ProductZ pattern;
        for (char c : up) {
            if (c == 'u')
                pattern.up.push_back(true);
            else if (c == 'd')
                pattern.up.push_back(false);
            else
                ctx.fail(s.child("up"), "expected a string of 'u' and 'd'");
        }
        if (pattern.up.empty()) ctx.fail(s.child("up"), "pattern must not be empty");
        return pattern;
    }
    if (type == "bloch") {
        if (s.has("up")) ctx.fail("/initial_state", "'bloch' takes no 'up' pattern");
        ProductBloch bloch;
        bloch.theta = s.number("theta", 0.0);
        bloch.chi = s.number("chi", 0.0);
        return bloch;
    }
    ctx.fail(s.child("type"), "expected \"pattern\" or \"bloch\"");
}

AxisSpec parse_axis(const Ctx& ctx, const Json& j, const std::string& path) {
    Section s(ctx, j, path, {"param", "min", "max", "count", "values"});
    AxisSpec axis;
    axis.param = s.text("param", "");
    const auto& catalog = sweep_parameter_catalog();
    if (std::find(catalog.begin(), catalog.end(), axis.param) == catalog.end()) {
        std::string known;
        for (const auto& p : catalog) known += (known.empty() ? "" : ", ") + p;
        ctx.fail(s.child("param"),
                 "unknown sweep parameter '" + axis.param + "' (known: " + known + ")");
    }
    if (s.has("values")) {
        if (s.has("min") || s.has("max") || s.has("count"))
            ctx.fail(path, "axis has both 'values' and a range");
        const Json& arr = s.raw("values");
        if (!arr.is_array() || arr.empty())
            ctx.fail(s.child("values"), "expected a non-empty array of numbers");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number())
                ctx.fail(s.child("values") + "/" + std::to_string(i),
                         "expected a number");
            axis.values.push_back(arr[i].get<double>());
        }
    } else {
        if (!s.has("min") || !s.has("max") || !s.has("count"))
            ctx.fail(path, "axis needs either 'values' or 'min'+'max'+'count'");
        axis.min = s.number("min", 0.0);
        axis.max = s.number("max", 0.0);
        axis.count = s.integer("count", 0);
        if (axis.count < 1) ctx.fail(s.child("count"), "count must be >= 1");
    }
    return axis;
}

Observable parse_observable(const Ctx& ctx, const Json& j) {
    const std::string path = "/sweep/observable";
    Section s(ctx, j, path, {"type", "site", "n_theta", "n_chi"});
    const std::string type = s.text("type", "");
    const auto reject_grid = [&] {
        if (s.has("n_theta") || s.has("n_chi"))
            ctx.fail(path, "'" + type + "' takes no Bloch grid");
    };
    if (type == "time_avg_z") {
        reject_grid();
        return TimeAverageZ{s.integer("site", 1)};
    }
    if (type == "time_avg_x") {
        reject_grid();
        return TimeAverageX{s.integer("site", 1)};
    }
    if (type == "mean_end_purity") {
        reject_grid();
        return MeanEndPurity{s.integer("site", 1)};
    }
    if (type == "bloch_purity") {
        if (s.has("site")) ctx.fail(s.child("site"), "'bloch_purity' takes no site");
        BlochPurity obs;
        obs.n_theta = s.integer("n_theta", obs.n_theta);
        obs.n_chi = s.integer("n_chi", obs.n_chi);
        if (obs.n_theta < 1 || obs.n_chi < 1)
            ctx.fail(path, "Bloch grid must be at least 1x1");
        return obs;
    }
    ctx.fail(s.child("type"),
             "expected \"time_avg_z\", \"time_avg_x\", \"mean_end_purity\" or "
             "\"bloch_purity\"");
}

SamplingMode parse_sampling(const Ctx& ctx, const Section& s) {
    const std::string name = s.text("sampling", "every_period");
    if (name == "every_period") return SamplingMode::EveryPeriod;
    if (name == "stroboscopic_2t") return SamplingMode::Stroboscopic2T;
    if (name == "intra_period") return SamplingMode::IntraPeriod;
    ctx.fail(s.child("sampling"),
             "expected \"every_period\", \"stroboscopic_2t\" or \"intra_period\"");
}

// Re-maps a "<path>: <message>" ConfigError from RunConfig::validate() onto file:line.
[[noreturn]] void rethrow_with_line(const Ctx& ctx, const ConfigError& err) {
    const std::string what = err.what();
    const auto sep = what.find(": ");
    if (!what.empty() && what[0] == '/' && sep != std::string::npos) {
        std::string path = what.substr(0, sep);
        if (path == "/") path.clear();
        ctx.fail(path, what.substr(sep + 2));
    }
    throw err;
}

}  // namespace

std::string run_kind_name(RunKind kind) {
    switch (kind) {
        case RunKind::Sweep: return "sweep";
        case RunKind::Trace: return "trace";
        case RunKind::Purity: return "purity";
        case RunKind::Verify: return "verify";
    }
    return "sweep";
}

std::string output_format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Svg: return "svg";
        case OutputFormat::Both: return "both";
    }
    return "both";
}

std::string sampling_mode_name(SamplingMode mode) {
    switch (mode) {
        case SamplingMode::Stroboscopic2T: return "stroboscopic_2t";
        case SamplingMode::EveryPeriod: return "every_period";
        case SamplingMode::IntraPeriod: return "intra_period";
    }
    return "every_period";
}

std::vector<double> AxisSpec::materialize() const {
    if (!values.empty()) return values;
    if (count < 1) throw ConfigError("axis '" + param + "': count must be >= 1");
    if (count == 1) return {min};
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

SweepPlan RunConfig::to_sweep_plan() const {
    if (!x) throw ConfigError("/sweep: a sweep needs at least an x axis");
    SweepPlan plan;
    plan.model = model;
    plan.spec = spec;
    plan.protocol = protocol;
    plan.initial = initial;
    plan.x = {x->param, x->materialize()};
    if (y) plan.y = SweepAxis{y->param, y->materialize()};
    plan.realizations = realizations;
    plan.master_seed = master_seed;
    plan.observable = observable;
    plan.ell = ell;
    plan.n_periods = n_periods;
    return plan;
}

void RunConfig::validate() const {
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("/chain: ") + e.what());
    }
    try {
        protocol.validate(spec.n_sites);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("/protocol: ") + e.what());
    }
    try {
        validate_initial_state(resolve_initial_for_sites(initial, spec.n_sites),
                               spec.n_sites);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("/initial_state: ") + e.what());
    }
    if (realizations < 1) throw ConfigError("/sweep/realizations: must be >= 1");
    if (ell < 1) throw ConfigError("/sweep/ell: must be >= 1");
    if (n_periods < 1) throw ConfigError("/sweep/n_periods: must be >= 1");
    if (trace.n_periods < 1) throw ConfigError("/trace/n_periods: must be >= 1");
    if (trace.realizations < 1) throw ConfigError("/trace/realizations: must be >= 1");

    if (kind == RunKind::Trace && x)
        throw ConfigError("/sweep: a trace run does not take sweep axes");
    if (kind == RunKind::Sweep || kind == RunKind::Purity) {
        if (!x) throw ConfigError("/sweep: missing x axis");
        if (y && y->param == x->param)
            throw ConfigError("/sweep/y: both axes use parameter '" + x->param + "'");
        if (kind == RunKind::Purity && !std::holds_alternative<BlochPurity>(observable))
            throw ConfigError(
                "/sweep/observable: a purity run requires the bloch_purity observable");
        try {
            to_sweep_plan().validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("/sweep: ") + e.what());
        }
    }
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
    Ctx ctx{source_name, build_line_index(text)};
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        byte = std::min(byte, text.size());
        int line = 1;
        std::size_t line_start = 0;
        for (std::size_t i = 0; i < byte; ++i)
            if (text[i] == '\n') {
                ++line;
                line_start = i + 1;
            }
        throw ConfigError(source_name + ":" + std::to_string(line) + ":" +
                          std::to_string(byte - line_start + 1) + ": " + e.what());
    }

    Section top(ctx, doc, "",
                {"kind", "model", "chain", "protocol", "initial_state", "sweep", "trace",
                 "output"});
    RunConfig config;

    const std::string kind = top.text("kind", "sweep");
    if (kind == "sweep")
        config.kind = RunKind::Sweep;
    else if (kind == "trace")
        config.kind = RunKind::Trace;
    else if (kind == "purity")
        config.kind = RunKind::Purity;
    else if (kind == "verify")
        config.kind = RunKind::Verify;
    else
        ctx.fail("/kind", "expected \"sweep\", \"trace\", \"purity\" or \"verify\"");

    const std::string model = top.text("model", "ising");
    if (model == "ising")
        config.model = Model::Ising;
    else if (model == "heisenberg")
        config.model = Model::Heisenberg;
    else
        ctx.fail("/model", "expected \"ising\" or \"heisenberg\"");

    if (top.has("chain")) config.spec = parse_chain(ctx, top.raw("chain"));
    if (top.has("protocol")) config.protocol = parse_protocol(ctx, top.raw("protocol"));
    config.initial = top.has("initial_state")
                         ? parse_initial(ctx, top.raw("initial_state"))
                         : InitialStateSpec(neel_state(config.spec.n_sites));

    if (config.kind == RunKind::Purity) config.observable = BlochPurity{};
    if (top.has("sweep")) {
        Section s(ctx, top.raw("sweep"), "/sweep",
                  {"x", "y", "observable", "realizations", "master_seed", "ell",
                   "n_periods"});
        if (s.has("x")) config.x = parse_axis(ctx, s.raw("x"), "/sweep/x");
        if (s.has("y")) config.y = parse_axis(ctx, s.raw("y"), "/sweep/y");
        if (s.has("observable"))
            config.observable = parse_observable(ctx, s.raw("observable"));
        config.realizations = s.integer("realizations", config.realizations);
        config.master_seed = s.seed("master_seed", config.master_seed);
        config.ell = s.integer("ell", config.ell);
        config.n_periods = s.integer("n_periods", config.n_periods);
    }

    if (top.has("trace")) {
        Section s(ctx, top.raw("trace"), "/trace",
                  {"n_periods", "sampling", "realizations", "master_seed"});
        config.trace.n_periods = s.integer("n_periods", config.trace.n_periods);
        config.trace.sampling = parse_sampling(ctx, s);
        config.trace.realizations = s.integer("realizations", config.trace.realizations);
        config.trace.master_seed = s.seed("master_seed", config.trace.master_seed);
    }

    if (top.has("output")) {
        Section s(ctx, top.raw("output"), "/output", {"directory", "format", "name"});
        config.output.directory = s.text("directory", config.output.directory);
        const std::string format = s.text("format", "both");
        if (format == "csv")
            config.output.format = OutputFormat::Csv;
        else if (format == "svg")
            config.output.format = OutputFormat::Svg;
        else if (format == "both")
            config.output.format = OutputFormat::Both;
        else
            ctx.fail("/output/format", "expected \"csv\", \"svg\" or \"both\"");
        config.output.name = s.text("name", config.output.name);
    }

    try {
        config.validate();
    } catch (const ConfigError& e) {
        rethrow_with_line(ctx, e);
    }
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::string text;
    {
        FILE* f = std::fopen(path.c_str(), "rb");
        if (!f) throw ConfigError(path + ": cannot open config file");
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
        std::fclose(f);
    }
    return parse_config(text, path);
}

std::string serialize_config(const RunConfig& config) {
    Json doc;
    doc["kind"] = run_kind_name(config.kind);
    doc["model"] = config.model == Model::Ising ? "ising" : "heisenberg";

    Json chain;
    chain["n_sites"] = config.spec.n_sites;
    chain["geometry"] =
        config.spec.geometry == Geometry::OpenChain ? "open" : "loop";
    chain["j_mean"] = config.spec.j_mean;
    chain["j_width"] = config.spec.j_width;
    chain["field_mean"] = config.spec.field_mean;
    chain["field_width"] = config.spec.field_width;
    doc["chain"] = std::move(chain);

    Json protocol;
    protocol["floquet_axis"] = std::string(1, axis_letter(config.protocol.floquet_axis));
    protocol["floquet_error"] = config.protocol.floquet_error;
    protocol["h2i_count"] = config.protocol.h2i_count;
    protocol["h2i_axis"] = std::string(1, axis_letter(config.protocol.h2i_axis));
    protocol["h2i_error"] = config.protocol.h2i_error;
    if (!config.protocol.h2i_targets.empty())
        protocol["h2i_targets"] = config.protocol.h2i_targets;
    if (!config.protocol.events.empty()) {
        Json events = Json::array();
        for (const ProtocolEvent& event : config.protocol.events) {
            Json e;
            e["period"] = event.period_index;
            if (const auto* rot = std::get_if<GlobalRotation>(&event.action)) {
                e["action"] = "rotate";
                e["axis"] = std::string(1, axis_letter(rot->axis));
                e["angle"] = rot->angle;
            } else if (const auto* fl = std::get_if<SetFloquetAxis>(&event.action)) {
                e["action"] = "set_floquet_axis";
                e["axis"] = std::string(1, axis_letter(fl->axis));
            } else {
                e["action"] = "set_h2i_axis";
                e["axis"] = std::string(
                    1, axis_letter(std::get<SetH2IAxis>(event.action).axis));
            }
            events.push_back(std::move(e));
        }
        protocol["events"] = std::move(events);
    }
    doc["protocol"] = std::move(protocol);

    Json initial;
    if (const auto* pattern = std::get_if<ProductZ>(&config.initial)) {
        initial["type"] = "pattern";
        std::string up;
        for (bool b : pattern->up) up += b ? 'u' : 'd';
        initial["up"] = up;
    } else {
        const auto& bloch = std::get<ProductBloch>(config.initial);
        initial["type"] = "bloch";
        initial["theta"] = bloch.theta;
        initial["chi"] = bloch.chi;
    }
    doc["initial_state"] = std::move(initial);

    Json sweep;
    const auto axis_json = [](const AxisSpec& axis) {
        Json a;
        a["param"] = axis.param;
        if (axis.is_range()) {
            a["min"] = axis.min;
            a["max"] = axis.max;
            a["count"] = axis.count;
        } else {
            a["values"] = axis.values;
        }
        return a;
    };
    if (config.x) sweep["x"] = axis_json(*config.x);
    if (config.y) sweep["y"] = axis_json(*config.y);
    Json observable;
    observable["type"] = observable_name(config.observable);
    if (const auto* z = std::get_if<TimeAverageZ>(&config.observable)) {
        observable["site"] = z->site;
    } else if (const auto* x = std::get_if<TimeAverageX>(&config.observable)) {
        observable["site"] = x->site;
    } else if (const auto* m = std::get_if<MeanEndPurity>(&config.observable)) {
        observable["site"] = m->site;
    } else {
        const auto& b = std::get<BlochPurity>(config.observable);
        observable["n_theta"] = b.n_theta;
        observable["n_chi"] = b.n_chi;
    }
    sweep["observable"] = std::move(observable);
    sweep["realizations"] = config.realizations;
    sweep["master_seed"] = config.master_seed;
    sweep["ell"] = config.ell;
    sweep["n_periods"] = config.n_periods;
    doc["sweep"] = std::move(sweep);

    Json trace;
    trace["n_periods"] = config.trace.n_periods;
    trace["sampling"] = sampling_mode_name(config.trace.sampling);
    trace["realizations"] = config.trace.realizations;
    trace["master_seed"] = config.trace.master_seed;
    doc["trace"] = std::move(trace);

    Json output;
    output["directory"] = config.output.directory;
    output["format"] = output_format_name(config.output.format);
    output["name"] = config.output.name;
    doc["output"] = std::move(output);

    return doc.dump(2) + "\n";
}

}  // namespace dtc::io
