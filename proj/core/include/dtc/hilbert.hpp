#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>

#include "dtc/spinmodel.hpp"

// Dense product-basis Hilbert-space algebra. Basis convention (shared by all modules):
// site 1 is the most significant bit of the basis index; bit value 0 is |up>
// (sigma_z eigenvalue +1). Dimensions stay <= 4096 (N <= 12), so everything is a
// dense Eigen matrix and propagators come from Hermitian eigendecompositions, which
// handle the huge GaAs phases (h*T ~ 2e4) exactly.
namespace dtc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct StateVector {
    Vector amplitudes;
    int n_sites = 0;

    int dim() const { return 1 << n_sites; }
    double norm() const { return amplitudes.norm(); }
    void check_normalized(double tol = 1e-10) const;  // throws std::runtime_error
};

// Hermiticity checked at construction (max elementwise |M - M^dagger| < 1e-12).
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m);
    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Matrix m_;
};

// Unitarity checked at construction (max elementwise |U^dagger U - 1| < 1e-10).
class UnitaryOperator {
  public:
    explicit UnitaryOperator(Matrix m);
    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Matrix m_;
};

// Single-site reduced density matrix with its Bloch vector.
struct ReducedSpin {
    Eigen::Matrix2cd rho;

    std::array<double, 3> spin_vector() const;  // (<sx>, <sy>, <sz>)
    double vector_length() const;
};

// Tensor product of the given Pauli factors with identity elsewhere; sites are 1-based.
HermitianOperator pauli_string(int n_sites, const std::map<int, Axis>& factors);

// Ising:      sum_bonds J_i sz sz + sum_i sum_a h_i^a sigma_i^a
// Heisenberg: sum_bonds J_i (sx sx + sy sy + sz sz) + fields
HermitianOperator build_hamiltonian(Model model, const ChainSpec& spec,
                                    const DisorderRealization& real);

// exp(-i H t) via eigendecomposition; caches the last decomposition per thread so
// repeated calls on the same operator (Trotter segments) only diagonalize once.
UnitaryOperator propagator(const HermitianOperator& h, double duration);

// <psi| sigma_site^axis |psi> by bit-indexed accumulation (no operator matrix).
double expectation(const StateVector& state, int site, Axis axis);

// Partial trace onto one site.
ReducedSpin reduce_to_site(const StateVector& state, int site);

StateVector make_initial_state(const InitialStateSpec& init, int n_sites);

}  // namespace dtc
