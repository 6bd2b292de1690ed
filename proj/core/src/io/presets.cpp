#include "dtc/io/presets.hpp"

#include <numbers>
#include <tuple>

namespace dtc::io {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 3> kSmallField{0.0, 0.0, 0.05};
constexpr std::array<double, 3> kSmallWidth{0.0, 0.0, 0.05};
// Typical electron-spin-qubit scale: huge static z splitting, nuclear-bath spread.
constexpr std::array<double, 3> kLargeField{0.0, 0.0, 2e4};
constexpr std::array<double, 3> kLargeWidth{0.0, 0.0, 50.0};

AxisSpec coupling_axis() { return {"j_mean", 0.0, kPi, 20, {}}; }
AxisSpec error_axis() { return {"epsilon", 0.0, 0.5, 20, {}}; }

// 20x20 order-parameter map over (J*T, epsilon), R=50, Neel start.
RunConfig map_base(Model model, std::array<double, 3> field_mean,
                   std::array<double, 3> field_width, int h2i_count) {
    RunConfig c;
    c.kind = RunKind::Sweep;
    c.model = model;
    c.spec.n_sites = 4;
    c.spec.field_mean = field_mean;
    c.spec.field_width = field_width;
    c.protocol.h2i_count = h2i_count;
    c.initial = neel_state(4);
    c.x = coupling_axis();
    c.y = error_axis();
    c.observable = TimeAverageZ{1};
    c.realizations = 50;
    return c;
}

// Disorder-averaged single-point trajectory, R=50.
RunConfig trace_base(Model model, double j_mean, double epsilon,
                     std::array<double, 3> field_mean, std::array<double, 3> field_width,
                     int h2i_count, SamplingMode sampling) {
    RunConfig c;
    c.kind = RunKind::Trace;
    c.model = model;
    c.spec.n_sites = 4;
    c.spec.j_mean = j_mean;
    c.spec.field_mean = field_mean;
    c.spec.field_width = field_width;
    c.protocol.floquet_error = epsilon;
    c.protocol.h2i_count = h2i_count;
    c.initial = neel_state(4);
    c.trace.sampling = sampling;
    c.trace.realizations = 50;
    return c;
}

// The axis-switching rotation drive: strong decoupling about z, pulse error on both
// pulse families, isotropic field noise, quarter-turns at periods 66 and 132 with
// the pulse axes following the rotated frame.
RunConfig rotation_base(double j_mean) {
    RunConfig c;
    c.kind = RunKind::Trace;
    c.model = Model::Heisenberg;
    c.spec.n_sites = 4;
    c.spec.j_mean = j_mean;
    c.spec.field_mean = {0.0, 0.0, 0.0};
    c.spec.field_width = {10.0, 10.0, 10.0};
    c.protocol.floquet_error = 0.05;
    c.protocol.h2i_count = 128;
    c.protocol.h2i_error = 0.05;
    c.protocol.events = {
        {66, GlobalRotation{Axis::Y, kPi / 2}},
        {66, SetFloquetAxis{Axis::Y}},
        {66, SetH2IAxis{Axis::X}},
        {132, GlobalRotation{Axis::Z, kPi / 2}},
        {132, SetFloquetAxis{Axis::Z}},
        {132, SetH2IAxis{Axis::Y}},
    };
    c.initial = ProductZ{{true, true, true, true}};
    c.trace.sampling = SamplingMode::EveryPeriod;
    c.trace.realizations = 50;
    return c;
}

ProductZ pattern(std::initializer_list<bool> ups) { return ProductZ{ups}; }

std::vector<Preset> build_catalog() {
    std::vector<Preset> out;
    const auto add = [&](std::string id, std::string description, RunConfig config) {
        config.output.name = id;
        out.push_back({std::move(id), std::move(description), std::move(config)});
    };

    // -- exchange-free (Ising) order-parameter maps --
    add("fig2a",
        "Ising-drive order map vs (J*T, epsilon); small z field 0.05 +- 0.05",
        map_base(Model::Ising, kSmallField, kSmallWidth, 0));
    {
        RunConfig c = map_base(Model::Ising, {0.0, 0.0, 1.0}, kSmallWidth, 0);
        add("fig2b", "Ising-drive order map; stronger static z field 1.0 +- 0.05",
            std::move(c));
    }
    {
        RunConfig c = map_base(Model::Ising, kSmallField, kSmallWidth, 0);
        c.spec.geometry = Geometry::ClosedLoop;
        add("fig2c", "Ising-drive order map on a 4-site loop (2x2 plaquette)",
            std::move(c));
    }

    // -- single-point trajectories of the Ising drive (2T-sampled spin vector) --
    add("fig3a", "Stabilized 2T-locked trajectory at J*T=0.6, epsilon=0.1",
        trace_base(Model::Ising, 0.6, 0.1, kSmallField, kSmallWidth, 0,
                   SamplingMode::Stroboscopic2T));
    add("fig3b", "Thermalizing trajectory at J*T=pi/2, epsilon=0.35",
        trace_base(Model::Ising, kPi / 2, 0.35, kSmallField, kSmallWidth, 0,
                   SamplingMode::Stroboscopic2T));
    add("fig3c", "Localized but unlocked trajectory at J*T=0.05, epsilon=0.2",
        trace_base(Model::Ising, 0.05, 0.2, kSmallField, kSmallWidth, 0,
                   SamplingMode::Stroboscopic2T));
    add("fig4a", "Uncoupled-chain trajectory, field 0.05 +- 0.05, epsilon=0.1",
        trace_base(Model::Ising, 0.0, 0.1, kSmallField, kSmallWidth, 0,
                   SamplingMode::Stroboscopic2T));
    add("fig4b", "Uncoupled-chain trajectory, field 0.5 +- 0.5, epsilon=0.1",
        trace_base(Model::Ising, 0.0, 0.1, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.5}, 0,
                   SamplingMode::Stroboscopic2T));

    // -- exchange chain with decoupling-pulse counts, small field --
    for (const auto& [suffix, n] : std::initializer_list<std::pair<const char*, int>>{
             {"a", 0}, {"b", 2}, {"c", 16}, {"d", 64}, {"e", 128}}) {
        add(std::string("fig6") + suffix,
            "Exchange-chain order map, " + std::to_string(n) +
                " decoupling pulses/period, small z field",
            map_base(Model::Heisenberg, kSmallField, kSmallWidth, n));
    }
    // -- same at electron-spin-qubit field scales --
    for (const auto& [suffix, n] : std::initializer_list<std::pair<const char*, int>>{
             {"a", 0}, {"b", 2}, {"c", 16}, {"d", 64}, {"e", 128}}) {
        add(std::string("fig7") + suffix,
            "Exchange-chain order map, " + std::to_string(n) +
                " decoupling pulses/period, qubit-scale z field",
            map_base(Model::Heisenberg, kLargeField, kLargeWidth, n));
    }

    // -- initial-state dependence (16 pulses/period, qubit-scale field) --
    {
        const std::pair<const char*, ProductZ> inits[] = {
            {"a", pattern({true, false, false, true})},
            {"b", pattern({true, true, false, false})},
            {"c", pattern({true, true, true, false})},
            {"d", pattern({true, true, true, true})},
        };
        const char* names[] = {"up-down-down-up", "up-up-down-down", "up-up-up-down",
                               "up-up-up-up"};
        int i = 0;
        for (const auto& [suffix, init] : inits) {
            RunConfig c = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 16);
            c.initial = init;
            add(std::string("fig8") + suffix,
                std::string("Order map from initial state ") + names[i++], std::move(c));
        }
    }

    // -- axis-switching rotation protocol --
    add("fig9",
        "Rotation protocol trajectory at J*T=pi: quarter-turns at periods 66/132 with "
        "pulse axes following",
        rotation_base(kPi));
    add("fig9b", "Rotation protocol control at J=0", rotation_base(0.0));
    {
        RunConfig c = rotation_base(kPi);
        c.kind = RunKind::Sweep;
        c.x = AxisSpec{"n_sites", 0.0, 0.0, 0, {1, 2, 3, 4, 5, 6, 7, 8}};
        c.y.reset();
        c.observable = MeanEndPurity{1};
        c.realizations = 30;
        c.n_periods = 200;
        add("fig9c", "Rotation-protocol purity vs chain size (1..8 sites)",
            std::move(c));
    }

    // -- coherence of a transverse initial state --
    {
        const ProductBloch plus_x{kPi / 4, 0.0};
        RunConfig a = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 0);
        a.initial = plus_x;
        a.observable = TimeAverageX{1};
        // "no pulses": a pi/2 angular error cancels the pi/2 pulse, so each period is
        // free evolution only.
        a.protocol.floquet_error = kPi / 2;
        add("fig10a", "Transverse-coherence map with no pulses at all", std::move(a));

        RunConfig b = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 0);
        b.initial = plus_x;
        b.observable = TimeAverageX{1};
        add("fig10b", "Transverse-coherence map, Floquet pulse about x only",
            std::move(b));

        RunConfig c = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 128);
        c.initial = plus_x;
        c.observable = TimeAverageX{1};
        add("fig10c",
            "Transverse-coherence map, Floquet about x + 128 decoupling pulses about z",
            std::move(c));

        RunConfig d = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 128);
        d.initial = plus_x;
        d.observable = TimeAverageX{1};
        d.protocol.h2i_axis = Axis::X;
        add("fig10d",
            "Transverse-coherence map, Floquet about x + 128 decoupling pulses about x",
            std::move(d));
    }

    // -- Bloch-averaged purity --
    {
        RunConfig c = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 128);
        c.kind = RunKind::Purity;
        c.observable = BlochPurity{8, 8};
        c.n_periods = 200;
        add("fig11", "Bloch-averaged end-spin purity map vs (J*T, epsilon)",
            std::move(c));
    }
    {
        RunConfig c;
        c.kind = RunKind::Purity;
        c.model = Model::Heisenberg;
        c.spec.n_sites = 4;
        c.spec.field_mean = kLargeField;
        c.spec.field_width = kLargeWidth;
        c.protocol.h2i_count = 128;
        c.observable = BlochPurity{8, 8};
        c.x = AxisSpec{"epsilon", 0.0, 0.5, 21, {}};
        c.y = AxisSpec{"j_mean", 0.0, 0.0, 0, {0.0, 0.8}};
        c.realizations = 50;
        c.n_periods = 200;
        add("fig11b",
            "Bloch-averaged purity vs pulse error at J*T=0.8 with a J=0 reference row",
            std::move(c));
    }

    // -- per-period sign alternation --
    add("fig12a",
        "Per-period trajectory of the Ising drive at J*T=0.6, epsilon=0.1 (sign "
        "alternation)",
        trace_base(Model::Ising, 0.6, 0.1, kSmallField, kSmallWidth, 0,
                   SamplingMode::EveryPeriod));
    add("fig12b",
        "Per-period trajectory of the pulse-decoupled exchange chain (64 "
        "pulses/period)",
        trace_base(Model::Heisenberg, 0.6, 0.1, kLargeField, kLargeWidth, 64,
                   SamplingMode::EveryPeriod));

    // -- chain-size dependence --
    for (int n = 2; n <= 6; ++n) {
        RunConfig c = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 128);
        c.spec.n_sites = n;
        c.initial = neel_state(n);
        const char suffix = static_cast<char>('a' + (n - 2));
        add(std::string("fig13") + suffix,
            "Order map for a " + std::to_string(n) + "-site chain, 128 pulses/period",
            std::move(c));
    }

    // -- exchange (charge) noise dependence --
    {
        const std::tuple<const char*, double, const char*> widths[] = {
            {"a", 0.1, "0.1"}, {"b", 0.5, "0.5"}, {"c", 1.0, "1"}, {"d", 5.0, "5"}};
        for (const auto& [suffix, width, label] : widths) {
            RunConfig c = map_base(Model::Heisenberg, kLargeField, kLargeWidth, 128);
            c.spec.j_width = width;
            c.initial = ProductZ{{true, true, true, true}};
            add(std::string("fig14") + suffix,
                std::string("Order map with exchange-coupling spread delta J*T = ") +
                    label,
                std::move(c));
        }
    }

    return out;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
    static const std::vector<Preset> catalog = build_catalog();
    return catalog;
}

const std::vector<std::pair<std::string, std::string>>& preset_aliases() {
    static const std::vector<std::pair<std::string, std::string>> aliases = {
        {"fig12", "fig12a"},
        {"fig13", "fig13c"},
        {"fig14", "fig14a"},
    };
    return aliases;
}

std::optional<RunConfig> find_preset(const std::string& id) {
    std::string wanted = id;
    for (const auto& [alias, target] : preset_aliases())
        if (alias == id) wanted = target;
    for (const Preset& preset : preset_catalog())
        if (preset.id == wanted) return preset.config;
    return std::nullopt;
}

}  // namespace dtc::io
