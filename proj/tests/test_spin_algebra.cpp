#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

TEST_SUITE("spin_algebra") {

TEST_CASE("single atom operators are Pauli matrices over two") {
    const SpinOperators ops = build_spin_operators(1);
    CHECK(ops.dim == 2);
    CHECK(ops.jz(0, 0).real() == doctest::Approx(-0.5));
    CHECK(ops.jz(1, 1).real() == doctest::Approx(0.5));
    CHECK(ops.jx(0, 1).real() == doctest::Approx(0.5));
    CHECK(ops.jx(1, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(ops.jx(0, 0)) == 0.0);
}

TEST_CASE("ladder element for j = 1") {
    const SpinOperators ops = build_spin_operators(2);
    // <0|J+|-1>
    CHECK(ops.jplus(1, 0).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("commutation relations, Casimir and hermiticity") {
    const cplx i(0.0, 1.0);
    for (int n = 1; n <= 12; ++n) {
        CAPTURE(n);
        const SpinOperators ops = build_spin_operators(n);
        const double j = ops.j();
        CHECK((commutator(ops.jx, ops.jy) - i * ops.jz).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((commutator(ops.jy, ops.jz) - i * ops.jx).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((commutator(ops.jz, ops.jx) - i * ops.jy).cwiseAbs().maxCoeff() < 1e-12);
        const Matrix casimir = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
        CHECK((casimir - j * (j + 1.0) * Matrix::Identity(ops.dim, ops.dim)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(hermiticity_error(ops.jx) == 0.0);
        CHECK(hermiticity_error(ops.jy) == 0.0);
        CHECK(hermiticity_error(ops.jz) == 0.0);
        CHECK((ops.jplus - (ops.jx + i * ops.jy)).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((ops.jminus - (ops.jx - i * ops.jy)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("zero atoms is rejected") {
    CHECK_THROWS_AS(build_spin_operators(0), DomainError);
    CHECK_THROWS_AS(build_spin_operators(-3), DomainError);
}

TEST_CASE("energies are delta_tilde times m") {
    {
        const SpinOperators ops = build_spin_operators(1);
        const EigenSystem e = diagonalize_hs({0.0, 4.0, 1}, ops);
        CHECK(e.energies(0) == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(e.energies(1) == doctest::Approx(2.0).epsilon(1e-12));
    }
    {
        const SpinOperators ops = build_spin_operators(2);
        const EigenSystem e = diagonalize_hs({3.0, 4.0, 2}, ops);
        CHECK(e.energies(0) == doctest::Approx(-5.0).epsilon(1e-12));
        CHECK(std::abs(e.energies(1)) < 1e-12);
        CHECK(e.energies(2) == doctest::Approx(5.0).epsilon(1e-12));
    }
}

TEST_CASE("eigensystem against a general complex eigensolver") {
    const SystemParams sys{0.5, 3.5, 10};
    const SpinOperators ops = build_spin_operators(sys.n_atoms);
    const EigenSystem e = diagonalize_hs(sys, ops);
    const Matrix h = system_hamiltonian(sys, ops);

    Eigen::ComplexEigenSolver<Matrix> general(h);
    std::vector<double> ref;
    for (Eigen::Index k = 0; k < general.eigenvalues().size(); ++k) ref.push_back(general.eigenvalues()(k).real());
    std::sort(ref.begin(), ref.end());
    const double spacing = std::sqrt(12.5);
    for (Eigen::Index k = 0; k < 11; ++k) {
        CHECK(std::abs(e.energies(k) - ref[static_cast<std::size_t>(k)]) < 1e-10);
        CHECK(std::abs(e.energies(k) - spacing * (k - 5.0)) < 1e-10);
    }
    const Matrix& v = e.vectors;
    CHECK((v.adjoint() * v - Matrix::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((v * e.energies.cast<cplx>().asDiagonal() * v.adjoint() - h).cwiseAbs().maxCoeff() < 1e-10);
    // phase convention
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index arg = 0;
        v.col(c).cwiseAbs().maxCoeff(&arg);
        CHECK(v(arg, c).imag() == 0.0);
        CHECK(v(arg, c).real() > 0.0);
    }
}

TEST_CASE("degenerate Hamiltonian is rejected") {
    const SpinOperators ops = build_spin_operators(2);
    CHECK_THROWS_AS(diagonalize_hs({0.0, 0.0, 2}, ops), DegenerateHamiltonianError);
}

TEST_CASE("heisenberg_f") {
    SUBCASE("tau = 0 returns F exactly") {
        const SystemParams sys{0.5, 3.5, 3};
        const SpinOperators ops = build_spin_operators(sys.n_atoms);
        const EigenSystem e = diagonalize_hs(sys, ops);
        CHECK(heisenberg_f(0.0, e, ops.jx) == ops.jx);
    }
    SUBCASE("commuting case") {
        const SystemParams sys{0.0, 4.0, 4};
        const SpinOperators ops = build_spin_operators(sys.n_atoms);
        const EigenSystem e = diagonalize_hs(sys, ops);
        for (double tau : {0.1, 0.7, 3.0}) CHECK((heisenberg_f(tau, e, ops.jx) - ops.jx).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("matches matrix exponentials") {
        const SystemParams sys{0.5, 3.5, 2};
        const SpinOperators ops = build_spin_operators(sys.n_atoms);
        const EigenSystem e = diagonalize_hs(sys, ops);
        const Matrix h = system_hamiltonian(sys, ops);
        const double tau = 0.3;
        const cplx i(0.0, 1.0);
        const Matrix u = oracle::expm(-i * tau * h);
        const Matrix back = u * ops.jx * u.adjoint();      // e^{-iH tau} F e^{iH tau}
        const Matrix forward = u.adjoint() * ops.jx * u;   // e^{iH tau} F e^{-iH tau}
        const Matrix fbar = heisenberg_f(tau, e, ops.jx);
        CHECK((fbar - back).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((fbar - forward).cwiseAbs().maxCoeff() > 1e-2);
        CHECK(hermiticity_error(fbar) < 1e-14);
    }
}

TEST_CASE("expectation values") {
    const SpinOperators ops = build_spin_operators(4);
    Matrix rho = Matrix::Zero(5, 5);
    rho(0, 0) = 1.0;
    CHECK(expect(rho, ops.jz) == doctest::Approx(-2.0));
    const NormalizedObservables o = normalized_observables(rho, ops);
    CHECK(o.jz == doctest::Approx(-1.0));
    CHECK(o.jz2 == doctest::Approx(1.0));
    CHECK(std::abs(o.jx) < 1e-15);
    CHECK(std::abs(o.jy) < 1e-15);

    // a non-Hermitian observable gives a complex trace
    Matrix bad = Matrix::Zero(5, 5);
    bad(0, 0) = cplx(0.0, 1.0);
    CHECK_THROWS_AS(expect(rho, bad), NumericalConsistencyError);
}

TEST_CASE("jz2 from populations equals the full trace") {
    const SpinOperators ops = build_spin_operators(6);
    Vector psi = Vector::Random(7);
    psi.normalize();
    const Matrix rho = psi * psi.adjoint();
    const NormalizedObservables o = normalized_observables(rho, ops);
    CHECK(o.jz2 == doctest::Approx(4.0 * expect(rho, ops.jz * ops.jz) / 36.0).epsilon(1e-13));
    CHECK(o.jy == doctest::Approx(2.0 * expect(rho, ops.jy) / 6.0).epsilon(1e-13));
}

TEST_CASE("trace and hermiticity diagnostics") {
    Matrix rho(2, 2);
    rho << 0.5, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.5;
    CHECK(trace_error(rho) < 1e-16);
    CHECK(hermiticity_error(rho) == 0.0);
    rho(0, 1) += 1e-3;
    CHECK(hermiticity_error(rho) == doctest::Approx(1e-3));
}

}
