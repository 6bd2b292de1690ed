#pragma once
#include <vector>

#include "dtc/floquet.hpp"

// Scalar diagnostics on trajectories: the stroboscopic time-average order parameter,
// spin-vector-length ("purity") metrics, and the Bloch-sphere-averaged purity.
//
// Purity here always means the length of the NOISE-AVERAGED spin vector: average the
// per-realization Bloch vectors first, then take the length. (The average of
// per-realization lengths is useless as a decoherence measure — pure states always
// have length 1.)
namespace dtc {

struct TimeAverage {
    double value = 0.0;
    int ell = 100;
    int site = 1;
    Axis axis = Axis::Z;
};

// <<sigma_site^axis>> = (1/(ell+1)) sum_{m=0..ell} <sigma(2mT)>, from post-pulse
// stroboscopic samples. Default ell = 100, i.e. a 200-period window.
TimeAverage time_averaged_component(const TrajectoryRecord& traj, int site, Axis axis,
                                    int ell = 100);

// Per-sample sqrt(sx^2 + sy^2 + sz^2) at `site`, over every sample in the record.
std::vector<double> end_spin_purity(const TrajectoryRecord& traj, int site);

// Mean of end_spin_purity over the post-pulse samples of periods 1..n (every period);
// the scalar used for protocol purity comparisons. Feed it an averaged trajectory.
double mean_end_purity(const TrajectoryRecord& traj, int site);

// (theta, chi) grid uniform in (cos 2theta, chi) — uniform single-qubit Bloch measure.
struct BlochGrid {
    int n_theta = 8;
    int n_chi = 8;

    std::vector<ProductBloch> points() const;
};

struct PurityAverage {
    double value = 0.0;
    int n_theta = 0;
    int n_chi = 0;
    int n_periods = 0;
    int realizations = 0;
};

// Shared engine for the Bloch-sphere purity average: evolves the whole grid of
// product initial states at once, accumulating the end-site spin vector at the
// stroboscopic times t = 2mT, m = 0..n_periods/2 (the same sampling the
// time-average order parameter uses). Keeps per-realization sums so a sweep cell
// can attach a jackknife standard error.
class BlochPurityAccumulator {
  public:
    BlochPurityAccumulator(Model model, ChainSpec spec, DriveProtocol protocol,
                           int n_periods, BlochGrid grid);

    void add_realization(const DisorderRealization& real);

    int realizations() const { return static_cast<int>(per_realization_.size()); }
    // grid-and-time average of the length of the realization-averaged vector
    double value() const;
    // leave-one-out jackknife standard error of value()
    double jackknife_stderr() const;

  private:
    Model model_;
    ChainSpec spec_;
    DriveProtocol protocol_;
    int n_periods_;
    BlochGrid grid_;
    int n_samples_;
    std::vector<std::vector<double>> per_realization_;  // flattened (point, sample, xyz)

    double value_of(const std::vector<double>& sums, int count) const;
};

// Convenience wrapper: R independent realizations seeded from master_seed.
PurityAverage bloch_averaged_purity(Model model, const ChainSpec& spec,
                                    const DriveProtocol& protocol, int n_periods,
                                    BlochGrid grid, int realizations,
                                    std::uint64_t master_seed);

}  // namespace dtc
