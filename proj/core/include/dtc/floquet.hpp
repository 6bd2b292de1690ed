#pragma once
#include <string>
#include <vector>

#include "dtc/hilbert.hpp"
#include "dtc/spinmodel.hpp"

// Per-period Floquet operator assembly and protocol execution.
//
// One period applies, in order: n/2 repetitions of [P+, U_H(T/n), P-, U_H(T/n)],
// then the global Floquet pulse F. In matrix form U_period = F (U P- U P+)^{n/2},
// with P+- = exp(i(+-pi/2 - h2i_error) sum_targets sigma^h2i_axis) (both pulse slots
// carry the same under-rotation, i.e. they are the same physical pulse up to a global
// phase at zero error) and F = exp(+i(pi/2 - epsilon) sum_i sigma^floquet_axis).
// With n = 0 the period is U_H(T) followed by F.
namespace dtc {

struct PulseUnitary {
    UnitaryOperator op;
    Axis axis;
    double nominal_angle;  // radians; the realized angle is nominal_angle - error
    double error;
    std::vector<int> targets;   // 1-based sites
    bool empty_targets = false; // true when the pulse degenerated to the identity
};

// exp(+i (nominal_angle - error) sum_{targets} sigma^axis), built from the closed
// per-site form cos(theta) 1 + i sin(theta) sigma (no eigensolver involved).
PulseUnitary global_pulse(int n_sites, Axis axis, double nominal_angle, double error,
                          const std::vector<int>& targets);

// Bloch rotation by `angle` about `axis` on every site: prod_i exp(-i angle/2 sigma_i).
UnitaryOperator rotation_unitary(int n_sites, Axis axis, double angle);

// The one-period unitary together with its ordered segment decomposition.
// `sequence` lists indices into `parts` in application order (first applied first);
// `operator_full` equals the ordered product of the segments, `before_pulse` the same
// product without the final Floquet pulse.
struct PeriodOperator {
    UnitaryOperator operator_full;
    UnitaryOperator before_pulse;
    std::vector<UnitaryOperator> parts;
    std::vector<int> sequence;
    int pulse_part = 0;  // index of the Floquet pulse in `parts`

    int segment_count() const { return static_cast<int>(sequence.size()); }
    const UnitaryOperator& segment(int i) const { return parts[sequence[i]]; }
};

PeriodOperator assemble_period(Model model, const ChainSpec& spec,
                               const DisorderRealization& real,
                               const DriveProtocol& protocol, Axis floquet_axis,
                               Axis h2i_axis);

enum class SamplingMode { Stroboscopic2T, EveryPeriod, IntraPeriod };
enum class SampleTag { PostPulse, PrePulse, SegmentBoundary };

// One recorded sample: the spin vector of every site plus the end-site (site 1)
// vector length. PostPulse(k) is the state after k complete periods (k = 0 is the
// initial state); PrePulse(k) is just before the Floquet pulse that completes
// period k; SegmentBoundary carries the executing period and 1-based segment index.
struct TrajectorySample {
    int period_index = 0;
    SampleTag tag = SampleTag::PostPulse;
    int segment = 0;
    std::vector<std::array<double, 3>> spins;  // one per site
    double end_length = 0.0;
};

struct TrajectoryRecord {
    int n_sites = 0;
    SamplingMode sampling = SamplingMode::Stroboscopic2T;
    std::vector<TrajectorySample> samples;
};

// Evolves an initial state period by period. Events with period_index k fire at
// t = kT before that period's segments; GlobalRotation applies as an instantaneous
// error-free unitary, axis switches rebuild the period operator.
TrajectoryRecord run_protocol(Model model, const ChainSpec& spec,
                              const DisorderRealization& real,
                              const DriveProtocol& protocol,
                              const InitialStateSpec& initial, int n_periods,
                              SamplingMode sampling);

// Noise average: mean of the per-site spin vectors across trajectories with an
// identical sample schedule; end_length is recomputed as the length of the averaged
// site-1 vector (the length of the average, not the average of lengths).
TrajectoryRecord average_trajectories(const std::vector<TrajectoryRecord>& trajectories);

}  // namespace dtc
