#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dtc/analysis.hpp"
#include "dtc/rng.hpp"

using namespace dtc;

namespace {

TrajectorySample sample(int period, SampleTag tag, std::array<double, 3> s1,
                        std::array<double, 3> s2 = {0, 0, 0}) {
    TrajectorySample s;
    s.period_index = period;
    s.tag = tag;
    s.spins = {s1, s2};
    s.end_length = std::sqrt(s1[0] * s1[0] + s1[1] * s1[1] + s1[2] * s1[2]);
    return s;
}

}  // namespace

TEST_CASE("time_averaged_component averages exactly the 2T post-pulse samples") {
    TrajectoryRecord traj;
    traj.n_sites = 2;
    traj.samples = {
        sample(0, SampleTag::PostPulse, {0.0, 0.0, 1.0}),
        sample(1, SampleTag::PrePulse, {0.4, 0.0, 0.9}),   // ignored: wrong tag
        sample(1, SampleTag::PostPulse, {0.0, 0.0, -0.8}), // ignored: odd period
        sample(2, SampleTag::PostPulse, {0.3, 0.1, 0.5}),
        sample(3, SampleTag::PostPulse, {0.0, 0.0, 0.7}),  // ignored: odd period
        sample(4, SampleTag::PostPulse, {0.0, 0.2, -0.2}),
    };
    const TimeAverage avg = time_averaged_component(traj, 1, Axis::Z, 2);
    CHECK(avg.value == doctest::Approx((1.0 + 0.5 - 0.2) / 3.0).epsilon(1e-14));
    CHECK(avg.ell == 2);
    CHECK(avg.site == 1);

    const TimeAverage avx = time_averaged_component(traj, 1, Axis::X, 2);
    CHECK(avx.value == doctest::Approx(0.1).epsilon(1e-14));

    // Shorter window uses only the first samples.
    CHECK(time_averaged_component(traj, 1, Axis::Z, 0).value ==
          doctest::Approx(1.0).epsilon(1e-14));

    // Not enough stroboscopic samples for the requested window.
    CHECK_THROWS_AS(time_averaged_component(traj, 1, Axis::Z, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(time_averaged_component(traj, 3, Axis::Z, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(time_averaged_component(traj, 1, Axis::Z, -1),
                    std::invalid_argument);
}

TEST_CASE("purity metrics follow the spin-vector lengths") {
    TrajectoryRecord traj;
    traj.n_sites = 2;
    traj.samples = {
        sample(0, SampleTag::PostPulse, {0.0, 0.0, 1.0}, {0.6, 0.0, 0.8}),
        sample(1, SampleTag::PostPulse, {0.3, 0.4, 0.0}),
        sample(2, SampleTag::PrePulse, {0.9, 0.0, 0.0}),  // not a post-pulse sample
        sample(2, SampleTag::PostPulse, {0.0, 0.0, 0.25}),
    };
    const std::vector<double> lens = end_spin_purity(traj, 1);
    REQUIRE(lens.size() == 4);
    CHECK(lens[0] == doctest::Approx(1.0));
    CHECK(lens[1] == doctest::Approx(0.5));
    CHECK(lens[3] == doctest::Approx(0.25));
    CHECK(end_spin_purity(traj, 2)[0] == doctest::Approx(1.0));

    // mean_end_purity skips the initial state and pre-pulse samples.
    CHECK(mean_end_purity(traj, 1) == doctest::Approx((0.5 + 0.25) / 2).epsilon(1e-14));
    CHECK_THROWS_AS(mean_end_purity(traj, 3), std::invalid_argument);

    TrajectoryRecord no_post;
    no_post.n_sites = 1;
    no_post.samples = {sample(0, SampleTag::PostPulse, {0, 0, 1})};
    CHECK_THROWS_AS(mean_end_purity(no_post, 1), std::invalid_argument);
}

TEST_CASE("the Bloch grid is the midpoint rule, uniform in cos(2 theta) and chi") {
    const BlochGrid grid{2, 2};
    const auto pts = grid.points();
    REQUIRE(pts.size() == 4);
    // cos(2 theta) midpoints of [-1, 1] with 2 bins: -1/2 and +1/2.
    CHECK(std::cos(2 * pts[0].theta) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::cos(2 * pts[2].theta) == doctest::Approx(+0.5).epsilon(1e-12));
    // chi midpoints: pi/2 and 3pi/2.
    CHECK(pts[0].chi == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(pts[1].chi == doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-12));

    const auto pts8 = BlochGrid{8, 8}.points();
    CHECK(pts8.size() == 64);
    for (const auto& p : pts8) {
        CHECK(p.theta >= 0.0);
        CHECK(p.theta <= std::numbers::pi / 2);
        CHECK(p.chi >= 0.0);
        CHECK(p.chi < 2 * std::numbers::pi);
    }
    // The cos(2 theta) values average to zero (uniform measure).
    double c = 0.0;
    for (const auto& p : pts8) c += std::cos(2 * p.theta);
    CHECK(c == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS((BlochGrid{1, 8}.points()), std::invalid_argument);
}

TEST_CASE("trivial dynamics give Bloch-averaged purity exactly 1") {
    ChainSpec spec;
    spec.n_sites = 2;
    DriveProtocol protocol;
    protocol.floquet_error = std::numbers::pi / 2;  // realized pulse angle zero

    BlochPurityAccumulator acc(Model::Ising, spec, protocol, 4, BlochGrid{4, 4});
    acc.add_realization(sample_disorder(spec, 1));
    acc.add_realization(sample_disorder(spec, 2));
    CHECK(acc.realizations() == 2);
    CHECK(acc.value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(acc.jackknife_stderr() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the grid accumulator matches per-state protocol runs") {
    ChainSpec spec;
    spec.n_sites = 2;
    spec.j_mean = 0.5;
    spec.j_width = 0.2;
    spec.field_mean = {0.0, 0.0, 0.3};
    spec.field_width = {0.0, 0.0, 0.2};
    DriveProtocol protocol;
    protocol.floquet_error = 0.12;
    const int n_periods = 6;
    const BlochGrid grid{3, 4};
    const DisorderRealization real = sample_disorder(spec, 55);

    BlochPurityAccumulator acc(Model::Ising, spec, protocol, n_periods, grid);
    acc.add_realization(real);

    // With a single realization the value is the grid-and-time mean of the
    // per-sample end-site lengths of ordinary per-state runs.
    double expect = 0.0;
    int count = 0;
    for (const auto& p : grid.points()) {
        const TrajectoryRecord traj =
            run_protocol(Model::Ising, spec, real, protocol, InitialStateSpec{p},
                         n_periods, SamplingMode::Stroboscopic2T);
        for (double len : end_spin_purity(traj, 1)) {
            expect += len;
            ++count;
        }
    }
    expect /= count;
    CHECK(count == 12 * (n_periods / 2 + 1));
    CHECK(acc.value() == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("averaging before measuring the length is what detects dephasing") {
    // Two realizations whose end spins precess oppositely: each run alone has
    // length 1, but the averaged vector is shorter.
    ChainSpec spec;
    spec.n_sites = 1;
    spec.field_mean = {0.0, 0.0, 0.0};
    spec.field_width = {0.0, 0.0, 0.7};
    DriveProtocol protocol;
    protocol.floquet_error = std::numbers::pi / 2;  // free precession only

    BlochPurityAccumulator acc(Model::Ising, spec, protocol, 4, BlochGrid{4, 4});
    int added = 0;
    for (std::uint64_t seed = 0; added < 6; ++seed) {
        const DisorderRealization real = sample_disorder(spec, seed);
        if (std::abs(real.fields[0][2]) < 0.2) continue;  // want visible precession
        acc.add_realization(real);
        ++added;
    }
    CHECK(acc.value() < 0.999);
    CHECK(acc.value() > 0.0);
    CHECK(acc.jackknife_stderr() > 0.0);
}

TEST_CASE("bloch_averaged_purity is deterministic in the master seed") {
    ChainSpec spec;
    spec.n_sites = 2;
    spec.j_mean = 0.4;
    spec.field_width = {0.0, 0.0, 0.4};
    DriveProtocol protocol;
    protocol.floquet_error = 0.1;

    const PurityAverage a =
        bloch_averaged_purity(Model::Ising, spec, protocol, 4, BlochGrid{3, 3}, 3, 42);
    const PurityAverage b =
        bloch_averaged_purity(Model::Ising, spec, protocol, 4, BlochGrid{3, 3}, 3, 42);
    const PurityAverage c =
        bloch_averaged_purity(Model::Ising, spec, protocol, 4, BlochGrid{3, 3}, 3, 43);
    CHECK(a.value == b.value);
    CHECK(a.value != c.value);
    CHECK(a.n_theta == 3);
    CHECK(a.n_periods == 4);
    CHECK(a.realizations == 3);
    CHECK(a.value > 0.0);
    CHECK(a.value <= 1.0 + 1e-12);

    CHECK_THROWS_AS(
        bloch_averaged_purity(Model::Ising, spec, protocol, 1, BlochGrid{3, 3}, 3, 42),
        std::invalid_argument);
    CHECK_THROWS_AS(
        bloch_averaged_purity(Model::Ising, spec, protocol, 4, BlochGrid{3, 3}, 0, 42),
        std::invalid_argument);
}
