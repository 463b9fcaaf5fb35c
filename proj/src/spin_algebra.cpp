#include "spinbath/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinbath/errors.hpp"

namespace spinbath {

double SystemParams::delta_tilde() const { return std::hypot(delta, epsilon); }

SpinOperators build_spin_operators(int n_atoms) {
    if (n_atoms < 1) throw DomainError("build_spin_operators: n_atoms must be >= 1");

    SpinOperators ops;
    ops.n_atoms = n_atoms;
    ops.dim = n_atoms + 1;
    const Eigen::Index d = ops.dim;
    const double j = ops.j();

    ops.jz = Matrix::Zero(d, d);
    ops.jplus = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double m = -j + static_cast<double>(k);
        ops.jz(k, k) = m;
        if (k + 1 < d) ops.jplus(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    ops.jminus = ops.jplus.adjoint();
    ops.jx = 0.5 * (ops.jplus + ops.jminus);
    ops.jy = cplx(0.0, -0.5) * (ops.jplus - ops.jminus);
    return ops;
}

Matrix system_hamiltonian(const SystemParams& sys, const SpinOperators& ops) {
    return sys.epsilon * ops.jz + sys.delta * ops.jx;
}

EigenSystem diagonalize_hs(const SystemParams& sys, const SpinOperators& ops) {
    if (!(sys.delta_tilde() > 0.0))
        throw DegenerateHamiltonianError("diagonalize_hs: eps = Delta = 0 gives a degenerate H_S");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(system_hamiltonian(sys, ops));
    if (solver.info() != Eigen::Success)
        throw NumericalConsistencyError("diagonalize_hs: eigensolver failed");

    EigenSystem out;
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        Eigen::Index arg = 0;
        out.vectors.col(c).cwiseAbs().maxCoeff(&arg);
        const cplx pivot = out.vectors(arg, c);
        out.vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
        out.vectors(arg, c) = cplx(out.vectors(arg, c).real(), 0.0);
    }
    return out;
}

Matrix heisenberg_f(double tau, const EigenSystem& eig, const Matrix& f) {
    if (tau == 0.0) return f;
    const Matrix& v = eig.vectors;
    Matrix fe = v.adjoint() * f * v;
    for (Eigen::Index b = 0; b < fe.cols(); ++b)
        for (Eigen::Index a = 0; a < fe.rows(); ++a)
            fe(a, b) *= std::polar(1.0, -(eig.energies(a) - eig.energies(b)) * tau);
    return v * fe * v.adjoint();
}

double expect(const Matrix& rho, const Matrix& obs) {
    // Tr[obs rho] without forming the product.
    const cplx value = (obs.transpose().cwiseProduct(rho)).sum();
    const double tol = 1e-10 * std::max(1.0, std::abs(value.real()));
    if (std::abs(value.imag()) > tol)
        throw NumericalConsistencyError("expect: imaginary part " + std::to_string(value.imag()) +
                                        " exceeds tolerance");
    return value.real();
}

NormalizedObservables normalized_observables(const Matrix& rho, const SpinOperators& ops) {
    const double n = static_cast<double>(ops.n_atoms);
    NormalizedObservables o;
    o.jz = 2.0 * expect(rho, ops.jz) / n;
    // J_z is diagonal in this basis, so <J_z^2> needs only the populations.
    const cplx jz2 = (ops.jz.diagonal().array().square() * rho.diagonal().array()).sum();
    o.jz2 = 4.0 * jz2.real() / (n * n);
    o.jy = 2.0 * expect(rho, ops.jy) / n;
    o.jx = 2.0 * expect(rho, ops.jx) / n;
    return o;
}

double hermiticity_error(const Matrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double trace_error(const Matrix& rho) { return std::abs(rho.trace() - cplx(1.0, 0.0)); }

}  // namespace spinbath
