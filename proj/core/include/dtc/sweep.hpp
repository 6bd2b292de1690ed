#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dtc/analysis.hpp"

// Phase-diagram sweeps: evaluate one observable over a 1D or 2D grid of ensemble /
// drive parameters, averaging over disorder realizations.
//
// Determinism: every (cell, realization) unit is seeded as
// derive_seed(master_seed, cell_index, realization) and computed independently, and
// the reduction runs in a fixed order after all units finish — so results are
// bit-identical for any worker count.
namespace dtc {

// ---- observables ------------------------------------------------------------

// <<sigma_site^z>> over the ell+1 stroboscopic 2T samples, averaged over disorder.
struct TimeAverageZ {
    int site = 1;
};
// Same with sigma^x.
struct TimeAverageX {
    int site = 1;
};
// Mean over periods 1..n_periods of the site's disorder-averaged spin-vector length.
struct MeanEndPurity {
    int site = 1;
};
// Bloch-sphere-averaged end-site purity on an n_theta x n_chi initial-state grid.
struct BlochPurity {
    int n_theta = 8;
    int n_chi = 8;
};
using Observable = std::variant<TimeAverageZ, TimeAverageX, MeanEndPurity, BlochPurity>;

std::string observable_name(const Observable& obs);

// ---- axes -------------------------------------------------------------------

// Sweepable parameters: j_mean, j_width, epsilon, field_width_x, field_width_y,
// field_width_z, h2i_count, n_sites.
const std::vector<std::string>& sweep_parameter_catalog();

// Applies one parameter value to the cell's spec/protocol copies; integer-valued
// parameters (h2i_count, n_sites) must be supplied as exact integers.
void apply_sweep_parameter(ChainSpec& spec, DriveProtocol& protocol,
                           const std::string& param, double value);

struct SweepAxis {
    std::string param;
    std::vector<double> values;
};

// ---- plan / result ----------------------------------------------------------

struct SweepPlan {
    Model model = Model::Ising;
    ChainSpec spec;
    DriveProtocol protocol;
    InitialStateSpec initial = ProductZ{};
    SweepAxis x;
    std::optional<SweepAxis> y;  // absent -> a single-row 1D sweep
    int realizations = 24;
    std::uint64_t master_seed = 1;
    Observable observable = TimeAverageZ{};
    int ell = 100;        // time-average window (TimeAverageZ/X runs 2*ell periods)
    int n_periods = 200;  // evolution length for the purity observables

    void validate() const;  // throws std::invalid_argument
};

struct CellFailure {
    std::size_t ix = 0;
    std::size_t iy = 0;
    std::string message;
};

struct PhaseDiagram {
    std::string x_param;
    std::vector<double> x_values;
    std::string y_param;               // empty for 1D sweeps
    std::vector<double> y_values;      // {0} for 1D sweeps
    std::vector<double> values;        // row-major, index = iy * nx + ix; NaN on failure
    std::vector<double> errors;        // standard errors, same layout
    int realizations = 0;
    std::uint64_t master_seed = 0;
    std::string observable;
    std::vector<CellFailure> failures;

    std::size_t nx() const { return x_values.size(); }
    std::size_t ny() const { return y_values.size(); }
    double value_at(std::size_t ix, std::size_t iy) const { return values[iy * nx() + ix]; }
    double error_at(std::size_t ix, std::size_t iy) const { return errors[iy * nx() + ix]; }
};

// n_workers <= 0 means one worker per hardware thread. A failing cell is isolated:
// its value becomes NaN and the failure is recorded; other cells are unaffected.
PhaseDiagram run_sweep(const SweepPlan& plan, int n_workers = 1);

// When sweeping site counts, a z-pattern initial state is re-derived for each size:
// alternating patterns stay alternating (up first), uniform patterns stay uniform;
// anything else throws. Bloch product states apply to any size unchanged.
InitialStateSpec resolve_initial_for_sites(const InitialStateSpec& init, int n_sites);

// ---- pulse-count saturation -------------------------------------------------

struct SaturationPoint {
    int pulse_count = 0;
    double area_fraction = 0.0;  // fraction of grid cells with value > threshold
};

// Re-runs the plan's sweep at each pulse count and reports the stabilized-area
// fraction; used to show the diagram saturating as the pulse count grows.
std::vector<SaturationPoint> h2i_saturation_curve(const SweepPlan& plan,
                                                  const std::vector<int>& pulse_counts,
                                                  int n_workers = 1,
                                                  double threshold = 0.9);

}  // namespace dtc
