#include "dtc/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dtc {
namespace {

Eigen::Matrix2cd pauli(Axis a) {
    Eigen::Matrix2cd m;
    const Complex i(0, 1);
    switch (a) {
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, -i, i, 0; break;
        case Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

void check_site(int site, int n_sites) {
    if (site < 1 || site > n_sites)
        throw std::invalid_argument("site " + std::to_string(site) + " outside 1.." +
                                    std::to_string(n_sites));
}

// bit mask of a 1-based site; site 1 = most significant bit, bit 0 = |up>
int site_mask(int n_sites, int site) { return 1 << (n_sites - site); }

}  // namespace

void StateVector::check_normalized(double tol) const {
    const double n = norm();
    if (std::abs(n - 1.0) > tol) {
        std::ostringstream os;
        os << "state norm drifted to " << n << " (tolerance " << tol << ")";
        throw std::runtime_error(os.str());
    }
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("Hermitian operator must be square");
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev >= 1e-12) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |M - M^dagger| = " << dev;
        throw std::invalid_argument(os.str());
    }
}

UnitaryOperator::UnitaryOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("unitary operator must be square");
    const Matrix g = m_.adjoint() * m_;
    const double dev =
        (g - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
    if (dev >= 1e-10) {
        std::ostringstream os;
        os << "matrix is not unitary: max |U^dagger U - 1| = " << dev;
        throw std::invalid_argument(os.str());
    }
}

std::array<double, 3> ReducedSpin::spin_vector() const {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
            (rho(0, 0) - rho(1, 1)).real()};
}

double ReducedSpin::vector_length() const {
    const auto s = spin_vector();
    return std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
}

HermitianOperator pauli_string(int n_sites, const std::map<int, Axis>& factors) {
    for (const auto& [site, axis] : factors) check_site(site, n_sites);
    Matrix m = Matrix::Identity(1, 1);
    for (int s = 1; s <= n_sites; ++s) {
        auto it = factors.find(s);
        m = kron(m, it == factors.end() ? Matrix(Eigen::Matrix2cd::Identity())
                                        : Matrix(pauli(it->second)));
    }
    return HermitianOperator(std::move(m));
}

HermitianOperator build_hamiltonian(Model model, const ChainSpec& spec,
                                    const DisorderRealization& real) {
    spec.validate();
    const int n = spec.n_sites;
    if (static_cast<int>(real.couplings.size()) != spec.n_bonds() ||
        static_cast<int>(real.fields.size()) != n)
        throw std::invalid_argument("disorder realization does not match chain spec");

    const int dim = 1 << n;
    Matrix h = Matrix::Zero(dim, dim);
    const Complex im(0, 1);

    std::vector<std::pair<int, int>> bonds;
    for (int i = 1; i < n; ++i) bonds.emplace_back(i, i + 1);
    if (spec.geometry == Geometry::ClosedLoop) bonds.emplace_back(n, 1);

    for (std::size_t b = 0; b < bonds.size(); ++b) {
        const double j = real.couplings[b];
        const int mi = site_mask(n, bonds[b].first);
        const int mj = site_mask(n, bonds[b].second);
        for (int s = 0; s < dim; ++s) {
            const bool di = s & mi, dj = s & mj;
            h(s, s) += j * (di == dj ? 1.0 : -1.0);  // sz sz
            if (model == Model::Heisenberg && di != dj)
                h(s ^ mi ^ mj, s) += 2.0 * j;  // sx sx + sy sy flip-flop
        }
    }
    for (int site = 1; site <= n; ++site) {
        const auto& f = real.fields[site - 1];
        const int m = site_mask(n, site);
        for (int s = 0; s < dim; ++s) {
            const bool down = s & m;
            if (f[2] != 0.0) h(s, s) += f[2] * (down ? -1.0 : 1.0);
            if (f[0] != 0.0) h(s ^ m, s) += f[0];
            if (f[1] != 0.0) h(s ^ m, s) += f[1] * (down ? -im : im);
        }
    }
    return HermitianOperator(std::move(h));
}

UnitaryOperator propagator(const HermitianOperator& h, double duration) {
    // Per-thread cache of the last eigendecomposition: Trotter assembly calls this
    // repeatedly on one Hamiltonian before moving to the next realization.
    struct Cache {
        Matrix input;
        Matrix vectors;
        Eigen::VectorXd values;
        bool valid = false;
    };
    thread_local Cache cache;

    const Matrix& m = h.matrix();
    if (!cache.valid || cache.input.rows() != m.rows() || cache.input != m) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
        if (solver.info() != Eigen::Success) {
            std::ostringstream os;
            os << "eigensolver failed on a " << m.rows() << "x" << m.cols()
               << " operator with max |entry| = " << m.cwiseAbs().maxCoeff();
            throw std::runtime_error(os.str());
        }
        cache.input = m;
        cache.vectors = solver.eigenvectors();
        cache.values = solver.eigenvalues();
        cache.valid = true;
    }
    const Complex im(0, 1);
    Vector phases = (-im * duration * cache.values.cast<Complex>().array()).exp();
    Matrix u = cache.vectors * phases.asDiagonal() * cache.vectors.adjoint();
    return UnitaryOperator(std::move(u));
}

double expectation(const StateVector& state, int site, Axis axis) {
    check_site(site, state.n_sites);
    const int dim = state.dim();
    const int m = site_mask(state.n_sites, site);
    const Vector& a = state.amplitudes;
    double acc = 0.0;
    switch (axis) {
        case Axis::Z:
            for (int s = 0; s < dim; ++s)
                acc += ((s & m) ? -1.0 : 1.0) * std::norm(a[s]);
            break;
        case Axis::X:
            for (int s = 0; s < dim; ++s)
                acc += std::real(std::conj(a[s]) * a[s ^ m]);
            break;
        case Axis::Y:
            // <psi| sy |psi>: sy|up> = i|down>, sy|down> = -i|up>
            for (int s = 0; s < dim; ++s) {
                const Complex c = std::conj(a[s]) * a[s ^ m];
                acc += ((s & m) ? -1.0 : 1.0) * c.imag();
            }
            break;
    }
    return acc;
}

ReducedSpin reduce_to_site(const StateVector& state, int site) {
    check_site(site, state.n_sites);
    const int dim = state.dim();
    const int m = site_mask(state.n_sites, site);
    Complex r00 = 0, r01 = 0, r11 = 0;
    for (int s = 0; s < dim; ++s) {
        if (s & m) continue;  // enumerate the |up> member of each pair
        const Complex up = state.amplitudes[s];
        const Complex dn = state.amplitudes[s | m];
        r00 += up * std::conj(up);
        r11 += dn * std::conj(dn);
        r01 += up * std::conj(dn);
    }
    ReducedSpin red;
    red.rho << r00, r01, std::conj(r01), r11;
    return red;
}

StateVector make_initial_state(const InitialStateSpec& init, int n_sites) {
    validate_initial_state(init, n_sites);
    StateVector st;
    st.n_sites = n_sites;
    if (const auto* pz = std::get_if<ProductZ>(&init)) {
        int index = 0;
        for (int site = 1; site <= n_sites; ++site)
            if (!pz->up[site - 1]) index |= site_mask(n_sites, site);
        st.amplitudes = Vector::Zero(1 << n_sites);
        st.amplitudes[index] = 1.0;
    } else {
        const auto& pb = std::get<ProductBloch>(init);
        const Complex up(std::cos(pb.theta), 0.0);
        const Complex dn = std::sin(pb.theta) * Complex(std::cos(pb.chi), std::sin(pb.chi));
        Vector v = Vector::Ones(1);
        for (int s = 0; s < n_sites; ++s) {
            Vector next(v.size() * 2);
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                next[2 * k] = v[k] * up;
                next[2 * k + 1] = v[k] * dn;
            }
            v.swap(next);
        }
        st.amplitudes = std::move(v);
    }
    return st;
}

}  // namespace dtc
