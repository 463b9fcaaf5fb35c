// spin_algebra.hpp: collective spin operators in the symmetric j = N/2 sector

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spinbath {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Only the maximal-j sector is represented: H_S and the coupling are functions
// of the collective J_x, J_y, J_z, and every prepared state starts in that
// sector, so the dynamics never leaves it.
struct SpinOperators {
    int n_atoms{0};
    Eigen::Index dim{0};
    // Basis order: J_z eigenvalue m = -N/2, ..., +N/2.
    Matrix jx, jy, jz, jplus, jminus;

    double j() const { return 0.5 * n_atoms; }
};

struct SystemParams {
    double epsilon{0.0};  // bias, coefficient of J_z
    double delta{0.0};    // tunnelling, coefficient of J_x
    int n_atoms{1};

    double delta_tilde() const;
};

/// Eigen-decomposition of H_S, columns of `vectors` normalised with their
/// largest-magnitude component real and positive.
struct EigenSystem {
    RealVector energies;  // ascending
    Matrix vectors;
};

SpinOperators build_spin_operators(int n_atoms);

/// eps J_z + Delta J_x.
Matrix system_hamiltonian(const SystemParams& sys, const SpinOperators& ops);

EigenSystem diagonalize_hs(const SystemParams& sys, const SpinOperators& ops);

/// F(tau) = exp(-i H_S tau) F exp(i H_S tau), the coupling operator propagated
/// back by tau under the free system evolution.
Matrix heisenberg_f(double tau, const EigenSystem& eig, const Matrix& f);

/// Tr[obs * rho]; throws NumericalConsistencyError if the imaginary part is not negligible.
double expect(const Matrix& rho, const Matrix& obs);

/// 2<J_z>/N and friends.
struct NormalizedObservables {
    double jz{0.0};
    double jz2{0.0};
    double jy{0.0};
    double jx{0.0};
};

NormalizedObservables normalized_observables(const Matrix& rho, const SpinOperators& ops);

template <typename A, typename B>
Matrix commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a * b - b * a;
}

/// max |rho - rho^dagger|.
double hermiticity_error(const Matrix& rho);
/// |Tr rho - 1|.
double trace_error(const Matrix& rho);

}  // namespace spinbath
