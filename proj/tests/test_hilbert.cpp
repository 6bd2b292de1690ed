#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dtc/hilbert.hpp"
#include "dtc/rng.hpp"

using namespace dtc;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

StateVector random_state(int n_sites, std::uint64_t seed) {
    SplitMix64 rng(seed);
    StateVector st;
    st.n_sites = n_sites;
    st.amplitudes = Vector(1 << n_sites);
    for (Eigen::Index i = 0; i < st.amplitudes.size(); ++i)
        st.amplitudes[i] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    st.amplitudes.normalize();
    return st;
}

}  // namespace

TEST_CASE("pauli_string places factors with site 1 as the most significant bit") {
    const Complex i(0, 1);

    Matrix z1 = pauli_string(2, {{1, Axis::Z}}).matrix();
    Matrix expected(4, 4);
    expected << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1;
    CHECK(max_abs_diff(z1, expected) == 0.0);

    Matrix z2 = pauli_string(2, {{2, Axis::Z}}).matrix();
    expected << 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1;
    CHECK(max_abs_diff(z2, expected) == 0.0);

    Matrix xx = pauli_string(2, {{1, Axis::X}, {2, Axis::X}}).matrix();
    expected << 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
    CHECK(max_abs_diff(xx, expected) == 0.0);

    // Same-site algebra: sx sy - sy sx = 2i sz, and every string squares to 1.
    Matrix x = pauli_string(3, {{2, Axis::X}}).matrix();
    Matrix y = pauli_string(3, {{2, Axis::Y}}).matrix();
    Matrix z = pauli_string(3, {{2, Axis::Z}}).matrix();
    CHECK(max_abs_diff(x * y - y * x, 2.0 * i * z) < 1e-15);
    CHECK(max_abs_diff(x * x, Matrix::Identity(8, 8)) < 1e-15);

    CHECK_THROWS_AS(pauli_string(2, {{3, Axis::X}}), std::invalid_argument);
    CHECK_THROWS_AS(pauli_string(2, {{0, Axis::X}}), std::invalid_argument);
}

TEST_CASE("operator constructors enforce their invariants") {
    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
    CHECK_THROWS_AS(UnitaryOperator{2.0 * Matrix::Identity(2, 2)},
                    std::invalid_argument);
    CHECK_NOTHROW(HermitianOperator{Matrix::Identity(4, 4)});
    CHECK_NOTHROW(UnitaryOperator{Matrix::Identity(4, 4)});
    CHECK_THROWS_AS(HermitianOperator{Matrix::Zero(2, 3)}, std::invalid_argument);
}

TEST_CASE("two-site Hamiltonians match hand-computed matrices") {
    ChainSpec spec;
    spec.n_sites = 2;
    DisorderRealization real;
    real.couplings = {0.7};
    real.fields = {{0.0, 0.0, 0.2}, {0.0, 0.0, -0.1}};

    // Ising: diag(J + h1 + h2, -J + h1 - h2, -J - h1 + h2, J - h1 - h2)
    Matrix h = build_hamiltonian(Model::Ising, spec, real).matrix();
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.7 + 0.2 - 0.1;
    expected(1, 1) = -0.7 + 0.2 + 0.1;
    expected(2, 2) = -0.7 - 0.2 - 0.1;
    expected(3, 3) = 0.7 - 0.2 + 0.1;
    CHECK(max_abs_diff(h, expected) < 1e-15);

    // Heisenberg adds the flip-flop element 2J between |up down> and |down up>.
    Matrix hh = build_hamiltonian(Model::Heisenberg, spec, real).matrix();
    expected(1, 2) = 1.4;
    expected(2, 1) = 1.4;
    CHECK(max_abs_diff(hh, expected) < 1e-15);

    // Pure exchange spectrum: triplet at +J (x3), singlet at -3J.
    real.fields = {{0, 0, 0}, {0, 0, 0}};
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        build_hamiltonian(Model::Heisenberg, spec, real).matrix());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-2.1).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(es.eigenvalues()(3) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("transverse fields produce the right single-site matrix") {
    ChainSpec spec;
    spec.n_sites = 1;
    DisorderRealization real;
    real.fields = {{0.3, 0.4, 0.5}};
    const Matrix h = build_hamiltonian(Model::Ising, spec, real).matrix();
    const Complex i(0, 1);
    Matrix expected(2, 2);
    expected << 0.5, 0.3 - 0.4 * i, 0.3 + 0.4 * i, -0.5;
    CHECK(max_abs_diff(h, expected) < 1e-15);
}

TEST_CASE("loop geometry adds the wrap-around bond") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.geometry = Geometry::ClosedLoop;
    DisorderRealization real;
    real.couplings = {0.0, 0.0, 0.0, 1.0};  // only the (4,1) bond
    real.fields.assign(4, {0.0, 0.0, 0.0});
    const Matrix h = build_hamiltonian(Model::Ising, spec, real).matrix();
    const Matrix zz = pauli_string(4, {{4, Axis::Z}, {1, Axis::Z}}).matrix();
    CHECK(max_abs_diff(h, zz) < 1e-15);
}

TEST_CASE("realization shape must match the chain spec") {
    ChainSpec spec;
    spec.n_sites = 3;
    DisorderRealization real;
    real.couplings = {0.1};  // needs 2 bonds
    real.fields.assign(3, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(build_hamiltonian(Model::Ising, spec, real), std::invalid_argument);
}

TEST_CASE("propagator is the analytic phase factor for a single spin") {
    const HermitianOperator h = pauli_string(1, {{1, Axis::Z}});
    const Matrix u = propagator(h, 0.7).matrix();
    CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.7)) < 1e-14);
    CHECK(std::abs(u(1, 1) - std::polar(1.0, +0.7)) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-14);

    // Huge phases (qubit-scale fields, h*T ~ 2e4) keep full accuracy.
    const HermitianOperator big(2.0e4 * pauli_string(1, {{1, Axis::Z}}).matrix());
    const Matrix ub = propagator(big, 1.0).matrix();
    CHECK(std::abs(ub(0, 0) - std::polar(1.0, -2.0e4)) < 1e-10);
}

TEST_CASE("propagator satisfies the semigroup law and stays unitary") {
    ChainSpec spec;
    spec.n_sites = 3;
    spec.j_mean = 0.8;
    spec.j_width = 0.4;
    spec.field_mean = {0.1, 0.2, 0.6};
    spec.field_width = {0.1, 0.1, 0.4};
    const DisorderRealization real = sample_disorder(spec, 2718);
    const HermitianOperator h = build_hamiltonian(Model::Heisenberg, spec, real);

    const Matrix u1 = propagator(h, 0.3).matrix();
    const Matrix u2 = propagator(h, 0.5).matrix();
    const Matrix u3 = propagator(h, 0.8).matrix();
    CHECK(max_abs_diff(u2 * u1, u3) < 1e-9);
    CHECK(max_abs_diff(u1.adjoint() * u1, Matrix::Identity(8, 8)) < 1e-12);

    // Zero duration is the identity.
    CHECK(max_abs_diff(propagator(h, 0.0).matrix(), Matrix::Identity(8, 8)) < 1e-13);
}

TEST_CASE("expectation agrees with the reduced density matrix on random states") {
    const StateVector st = random_state(4, 99);
    for (int site = 1; site <= 4; ++site) {
        const auto v = reduce_to_site(st, site).spin_vector();
        CHECK(expectation(st, site, Axis::X) == doctest::Approx(v[0]).epsilon(1e-12));
        CHECK(expectation(st, site, Axis::Y) == doctest::Approx(v[1]).epsilon(1e-12));
        CHECK(expectation(st, site, Axis::Z) == doctest::Approx(v[2]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(expectation(st, 5, Axis::Z), std::invalid_argument);
    CHECK_THROWS_AS(reduce_to_site(st, 0), std::invalid_argument);

    // Against the full operator matrix, for all three axes on one site.
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        const Matrix op = pauli_string(4, {{2, ax}}).matrix();
        const double direct =
            std::real(Complex(st.amplitudes.dot(op * st.amplitudes)));
        CHECK(expectation(st, 2, ax) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("reduced spin of a product state is the single-qubit Bloch vector") {
    // theta = pi/4, chi = pi/2 points along +y.
    const StateVector st = make_initial_state(
        InitialStateSpec{ProductBloch{std::numbers::pi / 4, std::numbers::pi / 2}}, 3);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (int site = 1; site <= 3; ++site) {
        CHECK(expectation(st, site, Axis::Y) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(expectation(st, site, Axis::Z) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(reduce_to_site(st, site).vector_length() ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    // General angles: s = (sin 2theta cos chi, sin 2theta sin chi, cos 2theta).
    const double theta = 0.61, chi = 2.3;
    const StateVector st2 =
        make_initial_state(InitialStateSpec{ProductBloch{theta, chi}}, 2);
    CHECK(expectation(st2, 1, Axis::X) ==
          doctest::Approx(std::sin(2 * theta) * std::cos(chi)).epsilon(1e-12));
    CHECK(expectation(st2, 1, Axis::Y) ==
          doctest::Approx(std::sin(2 * theta) * std::sin(chi)).epsilon(1e-12));
    CHECK(expectation(st2, 2, Axis::Z) ==
          doctest::Approx(std::cos(2 * theta)).epsilon(1e-12));
}

TEST_CASE("z-pattern states occupy the expected basis index") {
    // up/down pattern maps to bits with site 1 most significant; down = 1.
    const StateVector neel = make_initial_state(InitialStateSpec{neel_state(4)}, 4);
    CHECK(std::abs(neel.amplitudes[0b0101] - 1.0) == 0.0);
    CHECK(neel.amplitudes.cwiseAbs().sum() == 1.0);

    ProductZ all_down;
    all_down.up = {false, false};
    const StateVector dn = make_initial_state(InitialStateSpec{all_down}, 2);
    CHECK(std::abs(dn.amplitudes[3] - 1.0) == 0.0);

    CHECK(expectation(neel, 1, Axis::Z) == doctest::Approx(1.0));
    CHECK(expectation(neel, 2, Axis::Z) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(make_initial_state(InitialStateSpec{neel_state(3)}, 4),
                    std::invalid_argument);
}

TEST_CASE("norm-drift checking fires only on real drift") {
    StateVector st = random_state(3, 5);
    CHECK_NOTHROW(st.check_normalized());
    st.amplitudes *= 1.5;
    CHECK_THROWS_AS(st.check_normalized(), std::runtime_error);
}
