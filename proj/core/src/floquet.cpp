#include "dtc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtc {
namespace {

Eigen::Matrix2cd pauli2(Axis a) {
    Eigen::Matrix2cd m;
    const Complex i(0, 1);
    switch (a) {
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, -i, i, 0; break;
        case Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Kronecker chain of per-site 2x2 factors, site 1 outermost (most significant bit).
Matrix kron_chain(int n_sites, const std::vector<Eigen::Matrix2cd>& factors) {
    Matrix m = Matrix::Identity(1, 1);
    for (int s = 0; s < n_sites; ++s) {
        Matrix next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                next.block(2 * r, 2 * c, 2, 2) = m(r, c) * factors[s];
        m.swap(next);
    }
    return m;
}

Matrix binary_matrix_power(Matrix base, int exponent) {
    Matrix acc = Matrix::Identity(base.rows(), base.cols());
    while (exponent > 0) {
        if (exponent & 1) acc = base * acc;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return acc;
}

}  // namespace

PulseUnitary global_pulse(int n_sites, Axis axis, double nominal_angle, double error,
                          const std::vector<int>& targets) {
    for (int s : targets)
        if (s < 1 || s > n_sites)
            throw std::invalid_argument("pulse target site " + std::to_string(s) +
                                        " outside 1.." + std::to_string(n_sites));
    const double theta = nominal_angle - error;
    const Complex i(0, 1);
    const Eigen::Matrix2cd r = std::cos(theta) * Eigen::Matrix2cd::Identity() +
                               i * std::sin(theta) * pauli2(axis);
    std::vector<Eigen::Matrix2cd> factors(n_sites, Eigen::Matrix2cd::Identity());
    for (int s : targets) factors[s - 1] = r;

    PulseUnitary p{UnitaryOperator(kron_chain(n_sites, factors)), axis, nominal_angle,
                   error, targets, targets.empty()};
    return p;
}

UnitaryOperator rotation_unitary(int n_sites, Axis axis, double angle) {
    const Complex i(0, 1);
    const Eigen::Matrix2cd r = std::cos(angle / 2) * Eigen::Matrix2cd::Identity() -
                               i * std::sin(angle / 2) * pauli2(axis);
    std::vector<Eigen::Matrix2cd> factors(n_sites, r);
    return UnitaryOperator(kron_chain(n_sites, factors));
}

PeriodOperator assemble_period(Model model, const ChainSpec& spec,
                               const DisorderRealization& real,
                               const DriveProtocol& protocol, Axis floquet_axis,
                               Axis h2i_axis) {
    protocol.validate(spec.n_sites);
    const int n = protocol.h2i_count;
    const int n_sites = spec.n_sites;
    const double half_pi = std::numbers::pi / 2;

    std::vector<int> all(n_sites);
    for (int s = 0; s < n_sites; ++s) all[s] = s + 1;
    PulseUnitary f =
        global_pulse(n_sites, floquet_axis, half_pi, protocol.floquet_error, all);

    const HermitianOperator h = build_hamiltonian(model, spec, real);

    if (n == 0) {
        std::vector<UnitaryOperator> parts;
        parts.push_back(propagator(h, 1.0));
        parts.push_back(std::move(f.op));
        UnitaryOperator full(parts[1].matrix() * parts[0].matrix());
        UnitaryOperator before = parts[0];
        return PeriodOperator{std::move(full), std::move(before), std::move(parts),
                              {0, 1}, 1};
    }

    const std::vector<int> targets = protocol.resolved_targets(n_sites);
    PulseUnitary pp =
        global_pulse(n_sites, h2i_axis, +half_pi, protocol.h2i_error, targets);
    PulseUnitary pm =
        global_pulse(n_sites, h2i_axis, -half_pi, protocol.h2i_error, targets);
    const UnitaryOperator u = propagator(h, 1.0 / n);

    // application order P+, U, P-, U  ==  matrix product U P- U P+
    Matrix block = u.matrix() * pm.op.matrix() * u.matrix() * pp.op.matrix();
    Matrix before = binary_matrix_power(std::move(block), n / 2);

    std::vector<UnitaryOperator> parts;
    parts.push_back(std::move(pp.op));   // 0: P+
    parts.push_back(u);                  // 1: U_H(T/n)
    parts.push_back(std::move(pm.op));   // 2: P-
    parts.push_back(std::move(f.op));    // 3: F
    std::vector<int> sequence;
    sequence.reserve(2 * n + 1);
    for (int k = 0; k < n / 2; ++k) {
        sequence.insert(sequence.end(), {0, 1, 2, 1});
    }
    sequence.push_back(3);
    UnitaryOperator full(parts[3].matrix() * before);
    return PeriodOperator{std::move(full), UnitaryOperator(std::move(before)),
                          std::move(parts), std::move(sequence), 3};
}

namespace {

TrajectorySample snapshot(const StateVector& state, int period, SampleTag tag,
                          int segment) {
    TrajectorySample s;
    s.period_index = period;
    s.tag = tag;
    s.segment = segment;
    s.spins.reserve(state.n_sites);
    for (int site = 1; site <= state.n_sites; ++site)
        s.spins.push_back(reduce_to_site(state, site).spin_vector());
    const auto& e = s.spins.front();  // end site = site 1
    s.end_length = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    return s;
}

}  // namespace

TrajectoryRecord run_protocol(Model model, const ChainSpec& spec,
                              const DisorderRealization& real,
                              const DriveProtocol& protocol,
                              const InitialStateSpec& initial, int n_periods,
                              SamplingMode sampling) {
    if (n_periods < 1) throw std::invalid_argument("n_periods must be >= 1");
    protocol.validate(spec.n_sites);
    for (const auto& ev : protocol.events)
        if (ev.period_index > n_periods)
            throw std::invalid_argument(
                "protocol event at period " + std::to_string(ev.period_index) +
                " beyond the run length " + std::to_string(n_periods));

    StateVector state = make_initial_state(initial, spec.n_sites);
    TrajectoryRecord traj;
    traj.n_sites = spec.n_sites;
    traj.sampling = sampling;
    traj.samples.push_back(snapshot(state, 0, SampleTag::PostPulse, 0));

    Axis fl = protocol.floquet_axis;
    Axis h2 = protocol.h2i_axis;
    PeriodOperator period = assemble_period(model, spec, real, protocol, fl, h2);

    auto event = protocol.events.begin();
    for (int k = 0; k < n_periods; ++k) {
        bool rebuild = false;
        while (event != protocol.events.end() && event->period_index == k) {
            if (const auto* rot = std::get_if<GlobalRotation>(&event->action)) {
                state.amplitudes =
                    rotation_unitary(spec.n_sites, rot->axis, rot->angle).matrix() *
                    state.amplitudes;
            } else if (const auto* sf = std::get_if<SetFloquetAxis>(&event->action)) {
                fl = sf->axis;
                rebuild = true;
            } else {
                h2 = std::get<SetH2IAxis>(event->action).axis;
                rebuild = true;
            }
            ++event;
        }
        if (rebuild) period = assemble_period(model, spec, real, protocol, fl, h2);

        switch (sampling) {
            case SamplingMode::Stroboscopic2T:
                state.amplitudes = period.operator_full.matrix() * state.amplitudes;
                if ((k + 1) % 2 == 0)
                    traj.samples.push_back(
                        snapshot(state, k + 1, SampleTag::PostPulse, 0));
                break;
            case SamplingMode::EveryPeriod:
                state.amplitudes = period.before_pulse.matrix() * state.amplitudes;
                traj.samples.push_back(snapshot(state, k + 1, SampleTag::PrePulse, 0));
                state.amplitudes =
                    period.parts[period.pulse_part].matrix() * state.amplitudes;
                traj.samples.push_back(snapshot(state, k + 1, SampleTag::PostPulse, 0));
                break;
            case SamplingMode::IntraPeriod:
                for (int j = 0; j < period.segment_count(); ++j) {
                    state.amplitudes = period.segment(j).matrix() * state.amplitudes;
                    traj.samples.push_back(
                        snapshot(state, k, SampleTag::SegmentBoundary, j + 1));
                }
                traj.samples.push_back(snapshot(state, k + 1, SampleTag::PostPulse, 0));
                break;
        }
        state.check_normalized();
    }
    return traj;
}

TrajectoryRecord average_trajectories(const std::vector<TrajectoryRecord>& trajectories) {
    if (trajectories.empty())
        throw std::invalid_argument("cannot average zero trajectories");
    TrajectoryRecord avg = trajectories.front();
    for (std::size_t t = 1; t < trajectories.size(); ++t) {
        const TrajectoryRecord& tr = trajectories[t];
        if (tr.samples.size() != avg.samples.size() || tr.n_sites != avg.n_sites)
            throw std::invalid_argument("trajectory sample schedules differ");
        for (std::size_t s = 0; s < avg.samples.size(); ++s) {
            if (tr.samples[s].period_index != avg.samples[s].period_index ||
                tr.samples[s].tag != avg.samples[s].tag ||
                tr.samples[s].segment != avg.samples[s].segment)
                throw std::invalid_argument("trajectory sample schedules differ");
            for (int site = 0; site < avg.n_sites; ++site)
                for (int a = 0; a < 3; ++a)
                    avg.samples[s].spins[site][a] += tr.samples[s].spins[site][a];
        }
    }
    const double inv = 1.0 / static_cast<double>(trajectories.size());
    for (auto& s : avg.samples) {
        for (auto& v : s.spins)
            for (double& c : v) c *= inv;
        const auto& e = s.spins.front();
        s.end_length = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    }
    return avg;
}

}  // namespace dtc
