#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dtc/rng.hpp"
#include "dtc/spinmodel.hpp"

using namespace dtc;

TEST_CASE("axis letters round-trip and reject junk") {
    CHECK(axis_letter(Axis::X) == 'x');
    CHECK(axis_letter(Axis::Y) == 'y');
    CHECK(axis_letter(Axis::Z) == 'z');
    CHECK(axis_from_letter('x') == Axis::X);
    CHECK(axis_from_letter('y') == Axis::Y);
    CHECK(axis_from_letter('z') == Axis::Z);
    CHECK_THROWS_AS(axis_from_letter('w'), std::invalid_argument);
}

TEST_CASE("bond counting follows the geometry") {
    ChainSpec spec;
    spec.n_sites = 1;
    CHECK(spec.n_bonds() == 0);
    spec.n_sites = 2;
    CHECK(spec.n_bonds() == 1);
    spec.n_sites = 6;
    CHECK(spec.n_bonds() == 5);
    spec.geometry = Geometry::ClosedLoop;
    CHECK(spec.n_bonds() == 6);
    spec.n_sites = 4;
    CHECK(spec.n_bonds() == 4);
}

TEST_CASE("chain validation catches bad ensembles") {
    ChainSpec spec;
    spec.n_sites = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.n_sites = 13;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.n_sites = 2;
    spec.geometry = Geometry::ClosedLoop;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.geometry = Geometry::OpenChain;
    spec.j_width = -0.1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.j_width = 0.0;
    spec.field_width[1] = -1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.field_width[1] = 0.0;
    CHECK_NOTHROW(spec.validate());
    spec.n_sites = 1;  // a single spin is a valid (bond-free) chain
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("disorder draws are deterministic, sized right, and inside their bands") {
    ChainSpec spec;
    spec.n_sites = 5;
    spec.j_mean = 0.7;
    spec.j_width = 0.3;
    spec.field_mean = {0.1, 0.0, 1.0};
    spec.field_width = {0.05, 0.0, 0.5};

    const DisorderRealization a = sample_disorder(spec, 314);
    const DisorderRealization b = sample_disorder(spec, 314);
    const DisorderRealization c = sample_disorder(spec, 315);

    CHECK(a.couplings.size() == 4);
    CHECK(a.fields.size() == 5);
    CHECK(a.seed == 314);
    CHECK(a.couplings == b.couplings);
    CHECK(a.fields == b.fields);
    CHECK(a.couplings != c.couplings);

    for (double j : a.couplings) {
        CHECK(j >= 0.4);
        CHECK(j <= 1.0);
    }
    for (const auto& f : a.fields) {
        CHECK(std::abs(f[0] - 0.1) <= 0.05);
        CHECK(f[1] == 0.0);  // zero width pins the value exactly
        CHECK(std::abs(f[2] - 1.0) <= 0.5);
    }
}

TEST_CASE("disorder ensemble means converge to the configured means") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.j_mean = 0.6;
    spec.j_width = 0.2;
    spec.field_mean = {0.0, 0.0, 0.05};
    spec.field_width = {0.0, 0.0, 0.05};

    const int n_seeds = 10000;
    double jsum = 0.0, hsum = 0.0;
    for (int s = 0; s < n_seeds; ++s) {
        const DisorderRealization real = sample_disorder(spec, 1000 + s);
        for (double j : real.couplings) jsum += j;
        for (const auto& f : real.fields) hsum += f[2];
    }
    const double jmean = jsum / (3.0 * n_seeds);
    const double hmean = hsum / (4.0 * n_seeds);
    // 3-sigma bands; uniform(mean, width) has sd = width/sqrt(3).
    CHECK(std::abs(jmean - 0.6) < 3.0 * 0.2 / std::sqrt(3.0 * 3 * n_seeds));
    CHECK(std::abs(hmean - 0.05) < 3.0 * 0.05 / std::sqrt(3.0 * 4 * n_seeds));
}

TEST_CASE("default decoupling targets are the odd sites") {
    DriveProtocol p;
    CHECK(p.resolved_targets(1) == std::vector<int>{1});
    CHECK(p.resolved_targets(4) == std::vector<int>{1, 3});
    CHECK(p.resolved_targets(5) == std::vector<int>{1, 3, 5});
    p.h2i_targets = {2, 4};
    CHECK(p.resolved_targets(4) == std::vector<int>{2, 4});
}

TEST_CASE("protocol validation enforces pulse counts, targets, and event order") {
    DriveProtocol p;
    CHECK_NOTHROW(p.validate(4));
    p.h2i_count = 3;
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);
    p.h2i_count = -2;
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);
    p.h2i_count = 16;
    CHECK_NOTHROW(p.validate(4));

    p.h2i_targets = {0};
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);
    p.h2i_targets = {5};
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);
    p.h2i_targets = {1, 4};
    CHECK_NOTHROW(p.validate(4));

    p.events = {{10, SetFloquetAxis{Axis::Y}}, {5, SetH2IAxis{Axis::X}}};
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);  // out of order
    p.events = {{5, SetH2IAxis{Axis::X}}, {10, SetFloquetAxis{Axis::Y}}};
    CHECK_NOTHROW(p.validate(4));
    p.events = {{-1, SetFloquetAxis{Axis::Y}}};
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);
    p.events = {{3, GlobalRotation{Axis::Y, 4.0}}};
    CHECK_THROWS_AS(p.validate(4), std::invalid_argument);  // angle outside (-pi, pi]
    p.events = {{3, GlobalRotation{Axis::Y, std::numbers::pi}}};
    CHECK_NOTHROW(p.validate(4));
    // Equal period indices are allowed (stacked rotation + axis switches).
    p.events = {{3, GlobalRotation{Axis::Y, 1.0}}, {3, SetFloquetAxis{Axis::Y}}};
    CHECK_NOTHROW(p.validate(4));
}

TEST_CASE("neel_state alternates starting up") {
    const ProductZ p = neel_state(4);
    CHECK(p.up == std::vector<bool>{true, false, true, false});
    CHECK(neel_state(1).up == std::vector<bool>{true});
    CHECK(neel_state(5).up == std::vector<bool>{true, false, true, false, true});
}

TEST_CASE("initial-state validation checks pattern length and Bloch ranges") {
    CHECK_NOTHROW(validate_initial_state(InitialStateSpec{neel_state(4)}, 4));
    CHECK_THROWS_AS(validate_initial_state(InitialStateSpec{neel_state(3)}, 4),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_initial_state(InitialStateSpec{ProductBloch{0.3, 1.0}}, 4));
    CHECK_THROWS_AS(validate_initial_state(InitialStateSpec{ProductBloch{-0.1, 0.0}}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_initial_state(InitialStateSpec{ProductBloch{2.0, 0.0}}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        validate_initial_state(InitialStateSpec{ProductBloch{0.3, 6.30}}, 4),
        std::invalid_argument);
}

TEST_CASE("finite-pulse error estimate matches the closed form") {
    // (2 ln2 / pi) (tau/T2*)^2 at tau=4, T2*=10.
    CHECK(estimate_pulse_error(4.0, 10.0) == doctest::Approx(0.0706034).epsilon(1e-5));
    CHECK(estimate_pulse_error(0.0, 10.0) == 0.0);
    // Quadratic in the ratio.
    CHECK(estimate_pulse_error(2.0, 10.0) ==
          doctest::Approx(estimate_pulse_error(4.0, 10.0) / 4.0).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_pulse_error(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(estimate_pulse_error(-1.0, 10.0), std::domain_error);
}
