#include "dtc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dtc/rng.hpp"

namespace dtc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int require_integer(const std::string& param, double value) {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9)
        throw std::invalid_argument("sweep parameter '" + param +
                                    "' requires integer values, got " +
                                    std::to_string(value));
    return static_cast<int>(rounded);
}

struct CellContext {
    Model model;
    ChainSpec spec;
    DriveProtocol protocol;
    InitialStateSpec initial;
};

CellContext make_cell(const SweepPlan& plan, std::size_t ix, std::size_t iy) {
    CellContext cell{plan.model, plan.spec, plan.protocol, plan.initial};
    if (plan.y) apply_sweep_parameter(cell.spec, cell.protocol, plan.y->param,
                                      plan.y->values[iy]);
    apply_sweep_parameter(cell.spec, cell.protocol, plan.x.param, plan.x.values[ix]);
    cell.spec.validate();
    cell.protocol.validate(cell.spec.n_sites);
    cell.initial = resolve_initial_for_sites(plan.initial, cell.spec.n_sites);
    validate_initial_state(cell.initial, cell.spec.n_sites);
    return cell;
}

// One (cell, realization) scalar for the per-realization observables.
double scalar_unit(const SweepPlan& plan, const CellContext& cell, std::size_t cell_index,
                   int realization) {
    const DisorderRealization real =
        sample_disorder(cell.spec, derive_seed(plan.master_seed, cell_index,
                                               static_cast<std::size_t>(realization)));
    const TrajectoryRecord traj =
        run_protocol(cell.model, cell.spec, real, cell.protocol, cell.initial,
                     2 * plan.ell, SamplingMode::Stroboscopic2T);
    if (const auto* z = std::get_if<TimeAverageZ>(&plan.observable))
        return time_averaged_component(traj, z->site, Axis::Z, plan.ell).value;
    const auto& x = std::get<TimeAverageX>(plan.observable);
    return time_averaged_component(traj, x.site, Axis::X, plan.ell).value;
}

struct CellStats {
    double value = kNaN;
    double error = kNaN;
};

// Disorder-averaged spin vectors per period with a leave-one-out jackknife on the
// length-of-the-average statistic.
CellStats mean_end_purity_cell(const SweepPlan& plan, const CellContext& cell,
                               std::size_t cell_index, int site) {
    if (site < 1 || site > cell.spec.n_sites)
        throw std::invalid_argument("observable site out of range");
    const int r_count = plan.realizations;
    const std::size_t n_samples = static_cast<std::size_t>(plan.n_periods);
    // per realization: flattened (period-1, xyz)
    std::vector<std::vector<double>> vecs(static_cast<std::size_t>(r_count));
    for (int r = 0; r < r_count; ++r) {
        const DisorderRealization real = sample_disorder(
            cell.spec,
            derive_seed(plan.master_seed, cell_index, static_cast<std::size_t>(r)));
        const TrajectoryRecord traj =
            run_protocol(cell.model, cell.spec, real, cell.protocol, cell.initial,
                         plan.n_periods, SamplingMode::EveryPeriod);
        auto& flat = vecs[static_cast<std::size_t>(r)];
        flat.assign(n_samples * 3, 0.0);
        std::size_t m = 0;
        for (const TrajectorySample& sample : traj.samples) {
            if (sample.tag != SampleTag::PostPulse || sample.period_index < 1) continue;
            const auto& v = sample.spins[static_cast<std::size_t>(site - 1)];
            flat[m * 3 + 0] = v[0];
            flat[m * 3 + 1] = v[1];
            flat[m * 3 + 2] = v[2];
            ++m;
        }
        if (m != n_samples)
            throw std::runtime_error("trajectory returned unexpected sample count");
    }

    std::vector<double> total(n_samples * 3, 0.0);
    for (const auto& flat : vecs)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += flat[i];

    const auto mean_length = [&](const std::vector<double>& sums, int count) {
        double acc = 0.0;
        for (std::size_t m = 0; m < n_samples; ++m)
            acc += std::hypot(sums[m * 3] / count, sums[m * 3 + 1] / count,
                              sums[m * 3 + 2] / count);
        return acc / static_cast<double>(n_samples);
    };

    CellStats stats;
    stats.value = mean_length(total, r_count);
    if (r_count < 2) {
        stats.error = 0.0;
        return stats;
    }
    std::vector<double> loo(static_cast<std::size_t>(r_count));
    std::vector<double> partial(total.size());
    for (int r = 0; r < r_count; ++r) {
        for (std::size_t i = 0; i < total.size(); ++i)
            partial[i] = total[i] - vecs[static_cast<std::size_t>(r)][i];
        loo[static_cast<std::size_t>(r)] = mean_length(partial, r_count - 1);
    }
    double loo_mean = 0.0;
    for (double v : loo) loo_mean += v;
    loo_mean /= r_count;
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    stats.error = std::sqrt(ss * static_cast<double>(r_count - 1) / r_count);
    return stats;
}

CellStats bloch_purity_cell(const SweepPlan& plan, const CellContext& cell,
                            std::size_t cell_index, const BlochPurity& obs) {
    BlochGrid grid;
    grid.n_theta = obs.n_theta;
    grid.n_chi = obs.n_chi;
    BlochPurityAccumulator acc(cell.model, cell.spec, cell.protocol, plan.n_periods,
                               grid);
    for (int r = 0; r < plan.realizations; ++r)
        acc.add_realization(sample_disorder(
            cell.spec,
            derive_seed(plan.master_seed, cell_index, static_cast<std::size_t>(r))));
    CellStats stats;
    stats.value = acc.value();
    stats.error = acc.jackknife_stderr();
    return stats;
}

void run_units(std::size_t n_units, int n_workers,
               const std::function<void(std::size_t)>& evaluate) {
    int workers = n_workers > 0
                      ? n_workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, 64);
    if (workers == 1 || n_units <= 1) {
        for (std::size_t i = 0; i < n_units; ++i) evaluate(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_units) return;
            evaluate(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
}

}  // namespace

std::string observable_name(const Observable& obs) {
    if (std::holds_alternative<TimeAverageZ>(obs)) return "time_avg_z";
    if (std::holds_alternative<TimeAverageX>(obs)) return "time_avg_x";
    if (std::holds_alternative<MeanEndPurity>(obs)) return "mean_end_purity";
    return "bloch_purity";
}

const std::vector<std::string>& sweep_parameter_catalog() {
    static const std::vector<std::string> catalog = {
        "j_mean",        "j_width",       "epsilon",   "field_width_x",
        "field_width_y", "field_width_z", "h2i_count", "n_sites"};
    return catalog;
}

void apply_sweep_parameter(ChainSpec& spec, DriveProtocol& protocol,
                           const std::string& param, double value) {
    if (param == "j_mean") {
        spec.j_mean = value;
    } else if (param == "j_width") {
        spec.j_width = value;
    } else if (param == "epsilon") {
        protocol.floquet_error = value;
    } else if (param == "field_width_x") {
        spec.field_width[0] = value;
    } else if (param == "field_width_y") {
        spec.field_width[1] = value;
    } else if (param == "field_width_z") {
        spec.field_width[2] = value;
    } else if (param == "h2i_count") {
        protocol.h2i_count = require_integer(param, value);
    } else if (param == "n_sites") {
        spec.n_sites = require_integer(param, value);
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + param + "'");
    }
}

void SweepPlan::validate() const {
    spec.validate();
    protocol.validate(spec.n_sites);
    validate_initial_state(resolve_initial_for_sites(initial, spec.n_sites),
                           spec.n_sites);
    const auto check_axis = [](const SweepAxis& axis) {
        const auto& catalog = sweep_parameter_catalog();
        if (std::find(catalog.begin(), catalog.end(), axis.param) == catalog.end())
            throw std::invalid_argument("unknown sweep parameter '" + axis.param + "'");
        if (axis.values.empty())
            throw std::invalid_argument("sweep axis '" + axis.param + "' has no values");
    };
    check_axis(x);
    if (y) {
        check_axis(*y);
        if (y->param == x.param)
            throw std::invalid_argument("both sweep axes use parameter '" + x.param +
                                        "'");
    }
    if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    if (n_periods < 1) throw std::invalid_argument("n_periods must be >= 1");
}

InitialStateSpec resolve_initial_for_sites(const InitialStateSpec& init, int n_sites) {
    const auto* pattern = std::get_if<ProductZ>(&init);
    if (!pattern) return init;
    const std::size_t n = static_cast<std::size_t>(n_sites);
    if (pattern->up.size() == n) return init;
    const auto all_equal = [&](bool v) {
        return std::all_of(pattern->up.begin(), pattern->up.end(),
                           [v](bool b) { return b == v; });
    };
    const auto alternating = [&] {
        for (std::size_t i = 0; i < pattern->up.size(); ++i)
            if (pattern->up[i] != (i % 2 == 0)) return false;
        return true;
    };
    if (pattern->up.empty())
        throw std::invalid_argument("initial z-pattern is empty");
    ProductZ resized;
    if (all_equal(true)) {
        resized.up.assign(n, true);
    } else if (all_equal(false)) {
        resized.up.assign(n, false);
    } else if (alternating()) {
        resized = neel_state(n_sites);
    } else {
        throw std::invalid_argument(
            "initial z-pattern length does not match n_sites and is neither uniform "
            "nor alternating");
    }
    return resized;
}

PhaseDiagram run_sweep(const SweepPlan& plan, int n_workers) {
    plan.validate();
    const std::size_t nx = plan.x.values.size();
    const std::size_t ny = plan.y ? plan.y->values.size() : 1;
    const std::size_t n_cells = nx * ny;
    const bool per_realization = std::holds_alternative<TimeAverageZ>(plan.observable) ||
                                 std::holds_alternative<TimeAverageX>(plan.observable);
    const std::size_t r_count = static_cast<std::size_t>(plan.realizations);

    struct UnitResult {
        double value = kNaN;
        double error = kNaN;
        bool ok = false;
        std::string message;
    };
    const std::size_t n_units = per_realization ? n_cells * r_count : n_cells;
    std::vector<UnitResult> units(n_units);

    const auto evaluate = [&](std::size_t unit) {
        UnitResult& out = units[unit];
        const std::size_t cell_index = per_realization ? unit / r_count : unit;
        const std::size_t ix = cell_index % nx;
        const std::size_t iy = cell_index / nx;
        try {
            const CellContext cell = make_cell(plan, ix, iy);
            if (per_realization) {
                out.value = scalar_unit(plan, cell, cell_index,
                                        static_cast<int>(unit % r_count));
            } else if (const auto* mep = std::get_if<MeanEndPurity>(&plan.observable)) {
                const CellStats stats =
                    mean_end_purity_cell(plan, cell, cell_index, mep->site);
                out.value = stats.value;
                out.error = stats.error;
            } else {
                const CellStats stats = bloch_purity_cell(
                    plan, cell, cell_index, std::get<BlochPurity>(plan.observable));
                out.value = stats.value;
                out.error = stats.error;
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.message = e.what();
        }
    };
    run_units(n_units, n_workers, evaluate);

    PhaseDiagram diagram;
    diagram.x_param = plan.x.param;
    diagram.x_values = plan.x.values;
    diagram.y_param = plan.y ? plan.y->param : std::string{};
    diagram.y_values = plan.y ? plan.y->values : std::vector<double>{0.0};
    diagram.values.assign(n_cells, kNaN);
    diagram.errors.assign(n_cells, kNaN);
    diagram.realizations = plan.realizations;
    diagram.master_seed = plan.master_seed;
    diagram.observable = observable_name(plan.observable);

    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const std::size_t ix = cell % nx;
        const std::size_t iy = cell / nx;
        if (per_realization) {
            double sum = 0.0;
            bool ok = true;
            std::string message;
            for (std::size_t r = 0; r < r_count && ok; ++r) {
                const UnitResult& u = units[cell * r_count + r];
                if (!u.ok) {
                    ok = false;
                    message = "realization " + std::to_string(r) + ": " + u.message;
                } else {
                    sum += u.value;
                }
            }
            if (!ok) {
                diagram.failures.push_back({ix, iy, std::move(message)});
                continue;
            }
            const double mean = sum / static_cast<double>(r_count);
            double ss = 0.0;
            for (std::size_t r = 0; r < r_count; ++r) {
                const double d = units[cell * r_count + r].value - mean;
                ss += d * d;
            }
            diagram.values[cell] = mean;
            diagram.errors[cell] =
                r_count > 1 ? std::sqrt(ss / static_cast<double>(r_count - 1) /
                                        static_cast<double>(r_count))
                            : 0.0;
        } else {
            const UnitResult& u = units[cell];
            if (!u.ok) {
                diagram.failures.push_back({ix, iy, u.message});
                continue;
            }
            diagram.values[cell] = u.value;
            diagram.errors[cell] = u.error;
        }
    }
    return diagram;
}

std::vector<SaturationPoint> h2i_saturation_curve(const SweepPlan& plan,
                                                  const std::vector<int>& pulse_counts,
                                                  int n_workers, double threshold) {
    std::vector<SaturationPoint> curve;
    curve.reserve(pulse_counts.size());
    for (int count : pulse_counts) {
        SweepPlan point_plan = plan;
        point_plan.protocol.h2i_count = count;
        const PhaseDiagram diagram = run_sweep(point_plan, n_workers);
        std::size_t above = 0;
        for (double v : diagram.values)
            if (!std::isnan(v) && v > threshold) ++above;
        curve.push_back(
            {count, static_cast<double>(above) / static_cast<double>(diagram.values.size())});
    }
    return curve;
}

}  // namespace dtc
