#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dtc/floquet.hpp"
#include "dtc/hilbert.hpp"
#include "dtc/rng.hpp"

using namespace dtc;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

ChainSpec small_field_spec(int n_sites) {
    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.j_mean = 0.6;
    spec.j_width = 0.2;
    spec.field_mean = {0.0, 0.0, 0.05};
    spec.field_width = {0.0, 0.0, 0.05};
    return spec;
}

}  // namespace

TEST_CASE("an imperfect flip leaves the pinned magnetization residue") {
    // One under-rotated pulse on |up>: <sz> = -cos(2 epsilon); two pulses: +cos(4 eps).
    const int n = 1;
    const double eps = 0.1;
    std::vector<int> all = {1};
    const PulseUnitary f = global_pulse(n, Axis::X, kPi / 2, eps, all);
    StateVector st = make_initial_state(InitialStateSpec{ProductZ{{true}}}, n);

    st.amplitudes = f.op.matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::Z) == doctest::Approx(-0.980066577841242).epsilon(1e-12));
    st.amplitudes = f.op.matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::Z) == doctest::Approx(+0.921060994002885).epsilon(1e-12));
}

TEST_CASE("global_pulse matches its closed per-site form and respects targets") {
    // Single site: exp(i theta sx) = cos(theta) 1 + i sin(theta) sx.
    const double theta = kPi / 2 - 0.3;
    const PulseUnitary p = global_pulse(1, Axis::X, kPi / 2, 0.3, {1});
    Matrix expected(2, 2);
    const Complex i(0, 1);
    expected << std::cos(theta), i * std::sin(theta), i * std::sin(theta),
        std::cos(theta);
    CHECK(max_abs_diff(p.op.matrix(), expected) < 1e-14);

    // Targeted pulse acts as identity elsewhere.
    const PulseUnitary sel = global_pulse(4, Axis::X, kPi / 2, 0.0, {1, 3});
    ProductZ up4;
    up4.up = {true, true, true, true};
    StateVector st = make_initial_state(InitialStateSpec{up4}, 4);
    st.amplitudes = sel.op.matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::Z) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(expectation(st, 2, Axis::Z) == doctest::Approx(+1.0).epsilon(1e-12));
    CHECK(expectation(st, 3, Axis::Z) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(expectation(st, 4, Axis::Z) == doctest::Approx(+1.0).epsilon(1e-12));

    // Empty target list degenerates to the identity and says so.
    const PulseUnitary none = global_pulse(3, Axis::Y, kPi / 2, 0.1, {});
    CHECK(none.empty_targets);
    CHECK(max_abs_diff(none.op.matrix(), Matrix::Identity(8, 8)) == 0.0);

    CHECK_THROWS_AS(global_pulse(2, Axis::X, kPi / 2, 0.0, {3}),
                    std::invalid_argument);
}

TEST_CASE("rotation_unitary uses the right-handed Bloch convention") {
    // R_y(pi/2) carries +z to +x; R_y(pi) flips z.
    StateVector st = make_initial_state(InitialStateSpec{ProductZ{{true}}}, 1);
    st.amplitudes = rotation_unitary(1, Axis::Y, kPi / 2).matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::X) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(st, 1, Axis::Z) == doctest::Approx(0.0).epsilon(1e-12));

    st = make_initial_state(InitialStateSpec{ProductZ{{true}}}, 1);
    st.amplitudes = rotation_unitary(1, Axis::Y, kPi).matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::Z) == doctest::Approx(-1.0).epsilon(1e-12));

    // R_z(pi/2) carries +x to +y.
    st = make_initial_state(InitialStateSpec{ProductBloch{kPi / 4, 0.0}}, 1);
    st.amplitudes = rotation_unitary(1, Axis::Z, kPi / 2).matrix() * st.amplitudes;
    CHECK(expectation(st, 1, Axis::Y) == doctest::Approx(1.0).epsilon(1e-12));

    // Matches the 2x2 closed form cos(a/2) 1 - i sin(a/2) sigma.
    const double a = 0.77;
    Matrix expected(2, 2);
    const Complex i(0, 1);
    expected << std::cos(a / 2), -i * std::sin(a / 2), -i * std::sin(a / 2),
        std::cos(a / 2);
    CHECK(max_abs_diff(rotation_unitary(1, Axis::X, a).matrix(), expected) < 1e-14);
}

TEST_CASE("a pulse-free period is evolution followed by the global pulse") {
    const ChainSpec spec = small_field_spec(3);
    const DisorderRealization real = sample_disorder(spec, 7);
    DriveProtocol protocol;
    protocol.floquet_error = 0.12;

    const PeriodOperator period = assemble_period(Model::Ising, spec, real, protocol,
                                                  Axis::X, Axis::Z);
    CHECK(period.segment_count() == 2);

    const HermitianOperator h = build_hamiltonian(Model::Ising, spec, real);
    const Matrix u = propagator(h, 1.0).matrix();
    const Matrix f =
        global_pulse(3, Axis::X, kPi / 2, 0.12, {1, 2, 3}).op.matrix();
    CHECK(max_abs_diff(period.operator_full.matrix(), f * u) < 1e-13);
    CHECK(max_abs_diff(period.before_pulse.matrix(), u) < 1e-13);
    CHECK(max_abs_diff(period.parts[period.pulse_part].matrix(), f) < 1e-13);
}

TEST_CASE("a pulsed period multiplies out to its segment decomposition") {
    const ChainSpec spec = small_field_spec(4);
    const DisorderRealization real = sample_disorder(spec, 11);
    DriveProtocol protocol;
    protocol.floquet_error = 0.1;
    protocol.h2i_count = 6;
    protocol.h2i_error = 0.02;

    const PeriodOperator period = assemble_period(Model::Heisenberg, spec, real,
                                                  protocol, Axis::X, Axis::Z);
    CHECK(period.segment_count() == 2 * 6 + 1);

    // Ordered product of segments (first applied = rightmost factor).
    Matrix prod = Matrix::Identity(16, 16);
    for (int i = 0; i < period.segment_count(); ++i)
        prod = period.segment(i).matrix() * prod;
    CHECK(max_abs_diff(prod, period.operator_full.matrix()) < 1e-9);

    // before_pulse is the same product without the final global pulse.
    Matrix pre = Matrix::Identity(16, 16);
    for (int i = 0; i + 1 < period.segment_count(); ++i)
        pre = period.segment(i).matrix() * pre;
    CHECK(max_abs_diff(pre, period.before_pulse.matrix()) < 1e-9);

    // The two pulse polarities carry the same error with opposite nominal angle.
    CHECK(period.parts[0].matrix().isApprox(
        global_pulse(4, Axis::Z, +kPi / 2, 0.02, {1, 3}).op.matrix(), 1e-13));
    CHECK(period.parts[2].matrix().isApprox(
        global_pulse(4, Axis::Z, -kPi / 2, 0.02, {1, 3}).op.matrix(), 1e-13));

    CHECK_THROWS_AS(
        [&] {
            DriveProtocol odd = protocol;
            odd.h2i_count = 5;
            assemble_period(Model::Heisenberg, spec, real, odd, Axis::X, Axis::Z);
        }(),
        std::invalid_argument);
}

TEST_CASE("decoupled evolution with uniform fields reduces to the pure Ising chain") {
    // Two sites, pulses on site 1 only: with a uniform z field the exchange flip-flop
    // is exactly cancelled, so the Heisenberg period equals the Ising one.
    ChainSpec spec;
    spec.n_sites = 2;
    spec.j_mean = 0.8;
    spec.field_mean = {0.0, 0.0, 0.4};
    const DisorderRealization real = sample_disorder(spec, 1);
    DriveProtocol protocol;
    protocol.floquet_error = 0.0;
    protocol.h2i_count = 2;

    const Matrix pulsed = assemble_period(Model::Heisenberg, spec, real, protocol,
                                          Axis::X, Axis::Z)
                              .operator_full.matrix();
    const Matrix ising =
        assemble_period(Model::Ising, spec, real,
                        [] {
                            DriveProtocol p;
                            return p;
                        }(),
                        Axis::X, Axis::Z)
            .operator_full.matrix();

    // Compare up to a global phase via the overlap |tr(A^dagger B)| / dim.
    const Complex tr = (pulsed.adjoint() * ising).trace();
    CHECK(std::abs(std::abs(tr) / 4.0 - 1.0) < 1e-12);

    // A disordered field breaks the exact cancellation (finite pulse-rate residue).
    ChainSpec dis = spec;
    dis.field_width = {0.0, 0.0, 0.3};
    const DisorderRealization dreal = sample_disorder(dis, 21);
    const Matrix pulsed_dis = assemble_period(Model::Heisenberg, dis, dreal, protocol,
                                              Axis::X, Axis::Z)
                                  .operator_full.matrix();
    const Matrix ising_dis =
        assemble_period(Model::Ising, dis, dreal,
                        [] {
                            DriveProtocol p;
                            return p;
                        }(),
                        Axis::X, Axis::Z)
            .operator_full.matrix();
    const Complex trd = (pulsed_dis.adjoint() * ising_dis).trace();
    CHECK(std::abs(std::abs(trd) / 4.0 - 1.0) > 1e-4);
}

TEST_CASE("run_protocol emits the documented sample schedule") {
    const ChainSpec spec = small_field_spec(2);
    const DisorderRealization real = sample_disorder(spec, 3);
    DriveProtocol protocol;
    protocol.floquet_error = 0.05;
    const InitialStateSpec init{neel_state(2)};

    const TrajectoryRecord strobe =
        run_protocol(Model::Ising, spec, real, protocol, init, 6,
                     SamplingMode::Stroboscopic2T);
    REQUIRE(strobe.samples.size() == 4);  // t = 0, 2T, 4T, 6T
    CHECK(strobe.samples[0].period_index == 0);
    CHECK(strobe.samples[1].period_index == 2);
    CHECK(strobe.samples[3].period_index == 6);
    for (const auto& s : strobe.samples) CHECK(s.tag == SampleTag::PostPulse);

    const TrajectoryRecord every = run_protocol(Model::Ising, spec, real, protocol,
                                                init, 3, SamplingMode::EveryPeriod);
    REQUIRE(every.samples.size() == 7);  // initial + (pre, post) x 3
    CHECK(every.samples[1].tag == SampleTag::PrePulse);
    CHECK(every.samples[2].tag == SampleTag::PostPulse);
    CHECK(every.samples[1].period_index == 1);

    DriveProtocol pulsed = protocol;
    pulsed.h2i_count = 2;
    const TrajectoryRecord intra = run_protocol(Model::Ising, spec, real, pulsed, init,
                                                2, SamplingMode::IntraPeriod);
    // initial + per period (5 segment samples + 1 post-pulse)
    REQUIRE(intra.samples.size() == 1 + 2 * 6);
    CHECK(intra.samples[1].tag == SampleTag::SegmentBoundary);
    CHECK(intra.samples[1].segment == 1);
    CHECK(intra.samples[5].segment == 5);
    CHECK(intra.samples[6].tag == SampleTag::PostPulse);
    CHECK(intra.samples[6].period_index == 1);

    // Stroboscopic samples agree with every-period post-pulse samples.
    const TrajectoryRecord every6 = run_protocol(Model::Ising, spec, real, protocol,
                                                 init, 6, SamplingMode::EveryPeriod);
    for (std::size_t k = 0; k < strobe.samples.size(); ++k) {
        const auto& a = strobe.samples[k];
        const auto& b = every6.samples[4 * k];  // post-pulse of period 2k
        REQUIRE(b.period_index == a.period_index);
        for (int site = 0; site < 2; ++site)
            for (int c = 0; c < 3; ++c)
                CHECK(a.spins[site][c] == doctest::Approx(b.spins[site][c]).epsilon(1e-12));
    }
}

TEST_CASE("total z magnetization is conserved by pulse-free exchange evolution") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.j_mean = 0.9;
    spec.j_width = 0.3;
    spec.field_mean = {0.0, 0.0, 0.8};
    spec.field_width = {0.0, 0.0, 0.5};
    const DisorderRealization real = sample_disorder(spec, 17);
    DriveProtocol protocol;
    protocol.floquet_error = kPi / 2;  // zero realized pulse angle: free evolution

    const TrajectoryRecord traj =
        run_protocol(Model::Heisenberg, spec, real, protocol,
                     InitialStateSpec{ProductBloch{0.4, 1.1}}, 20,
                     SamplingMode::EveryPeriod);
    const auto total_z = [&](const TrajectorySample& s) {
        double z = 0.0;
        for (const auto& v : s.spins) z += v[2];
        return z;
    };
    const double z0 = total_z(traj.samples.front());
    for (const auto& s : traj.samples)
        CHECK(total_z(s) == doctest::Approx(z0).epsilon(1e-9));
}

TEST_CASE("norms survive 200 periods of heavy disorder") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.j_mean = 1.2;
    spec.j_width = 0.8;
    spec.field_mean = {0.0, 0.0, 2.0e4};
    spec.field_width = {0.0, 0.0, 50.0};
    const DisorderRealization real = sample_disorder(spec, 23);
    DriveProtocol protocol;
    protocol.floquet_error = 0.1;
    protocol.h2i_count = 16;

    // run_protocol checks the norm after every period and throws on drift.
    CHECK_NOTHROW(run_protocol(Model::Heisenberg, spec, real, protocol,
                               InitialStateSpec{neel_state(4)}, 200,
                               SamplingMode::Stroboscopic2T));
}

TEST_CASE("timed events rotate and retune the drive in place") {
    const ChainSpec spec = small_field_spec(2);
    const DisorderRealization real = sample_disorder(spec, 31);

    // A pi rotation about x at period 0 flips the initial Neel pattern.
    DriveProtocol rot;
    rot.floquet_error = kPi / 2;  // identity pulse, pure evolution
    rot.events = {{0, GlobalRotation{Axis::X, kPi}}};
    const TrajectoryRecord traj =
        run_protocol(Model::Ising, spec, real, rot, InitialStateSpec{neel_state(2)}, 1,
                     SamplingMode::EveryPeriod);
    // Sample 0 is taken before the event fires; afterwards site 1 points down.
    CHECK(traj.samples[0].spins[0][2] == doctest::Approx(1.0));
    CHECK(traj.samples[1].spins[0][2] == doctest::Approx(-1.0).epsilon(1e-10));

    // Switching the pulse axis at period 0 equals building with that axis directly.
    DriveProtocol switched;
    switched.floquet_error = 0.07;
    switched.events = {{0, SetFloquetAxis{Axis::Y}}};
    DriveProtocol direct;
    direct.floquet_error = 0.07;
    direct.floquet_axis = Axis::Y;
    const auto a = run_protocol(Model::Ising, spec, real, switched,
                                InitialStateSpec{neel_state(2)}, 3,
                                SamplingMode::EveryPeriod);
    const auto b = run_protocol(Model::Ising, spec, real, direct,
                                InitialStateSpec{neel_state(2)}, 3,
                                SamplingMode::EveryPeriod);
    for (std::size_t s = 0; s < a.samples.size(); ++s)
        for (int site = 0; site < 2; ++site)
            for (int c = 0; c < 3; ++c)
                CHECK(a.samples[s].spins[site][c] ==
                      doctest::Approx(b.samples[s].spins[site][c]).epsilon(1e-12));

    // Events beyond the run length are rejected.
    DriveProtocol late;
    late.events = {{5, SetFloquetAxis{Axis::Y}}};
    CHECK_THROWS_AS(run_protocol(Model::Ising, spec, real, late,
                                 InitialStateSpec{neel_state(2)}, 3,
                                 SamplingMode::EveryPeriod),
                    std::invalid_argument);
}

TEST_CASE("average_trajectories averages vectors, then measures the length") {
    const ChainSpec spec = small_field_spec(2);
    DriveProtocol protocol;
    protocol.floquet_error = 0.1;
    const InitialStateSpec init{neel_state(2)};

    std::vector<TrajectoryRecord> runs;
    for (std::uint64_t seed : {100ull, 200ull, 300ull})
        runs.push_back(run_protocol(Model::Ising, spec, sample_disorder(spec, seed),
                                    protocol, init, 4, SamplingMode::EveryPeriod));
    const TrajectoryRecord avg = average_trajectories(runs);
    REQUIRE(avg.samples.size() == runs[0].samples.size());
    for (std::size_t s = 0; s < avg.samples.size(); ++s) {
        for (int site = 0; site < 2; ++site)
            for (int c = 0; c < 3; ++c) {
                const double mean = (runs[0].samples[s].spins[site][c] +
                                     runs[1].samples[s].spins[site][c] +
                                     runs[2].samples[s].spins[site][c]) /
                                    3.0;
                CHECK(avg.samples[s].spins[site][c] ==
                      doctest::Approx(mean).epsilon(1e-12));
            }
        const auto& e = avg.samples[s].spins[0];
        CHECK(avg.samples[s].end_length ==
              doctest::Approx(std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]))
                  .epsilon(1e-12));
    }

    // Opposite vectors cancel: the averaged length drops, unlike per-run lengths.
    CHECK(avg.samples.back().end_length < 1.0);

    // Mismatched schedules are rejected.
    std::vector<TrajectoryRecord> bad = {runs[0], runs[1]};
    bad[1].samples.pop_back();
    CHECK_THROWS_AS(average_trajectories(bad), std::invalid_argument);
    CHECK_THROWS_AS(average_trajectories({}), std::invalid_argument);
}
