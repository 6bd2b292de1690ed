#pragma once
#include <string>
#include <vector>

#include "dtc/floquet.hpp"

// Independent verification path. Everything here is deliberately computed by a second,
// maximally simple algorithm (series exponentials, explicit Kronecker loops, diagonal
// phase products) so that a shared bug with the main eigendecomposition path is
// unlikely. Test-context only; small dimensions.
namespace dtc {

// exp(A) by scaling-and-squaring Taylor summation (not eigendecomposition).
Matrix expm_series(const Matrix& a);

// Two-spin pulse identity: with S = sum_a sigma^a x sigma^a and P = sigma^beta x 1,
//   P e^{i theta S} P e^{i theta S} = e^{i 2 theta sigma^beta x sigma^beta}.
// Returns the max elementwise deviation between the two sides.
double verify_h2i_identity(double theta, Axis axis);

// The one-period operator of the pure Ising chain with z fields,
// exp(-i (sum_b J_b sz sz + sum_i h_i^z sz) T) * exp(+i (pi/2 - epsilon) sum_i sx),
// built from diagonal phases and explicit Kronecker products. Used as the
// Trotter-convergence target.
UnitaryOperator reference_ising_period(const ChainSpec& spec,
                                       const DisorderRealization& real, double epsilon);

// Max elementwise deviation between two unitaries after removing a global phase.
double deviation_up_to_phase(const Matrix& a, const Matrix& b);

struct FlipSymmetryReport {
    double open_pi_shift = 0.0;       // should vanish
    double loop_half_pi_shift = 0.0;  // should vanish (4-site loop)
    double open_half_pi_shift = 0.0;  // negative control: should NOT vanish
};

// Stroboscopic observables of the Ising drive under J*T -> J*T + shift, compared on a
// fixed pseudorandom state over 40 periods; delta-J must be zero in `spec`.
FlipSymmetryReport verify_flip_symmetries(const ChainSpec& spec);

struct OracleCheck {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool expect_below = true;  // false for negative controls
    bool pass = false;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    bool all_pass = true;
};

// The full suite behind the CLI `verify` command; runs in a few seconds.
OracleReport run_all_oracles();

}  // namespace dtc
