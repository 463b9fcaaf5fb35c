#include "spinbath/short_time.hpp"

#include <cmath>

#include <Eigen/Sparse>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

void require_down_z(Preparation prep) {
    if (prep != Preparation::DownZ)
        throw UnsupportedModelError("short-time scalar formulas hold for the down_z preparation only (got " +
                                    to_string(prep) + ")");
}

double prepared_f0(const SystemParams& sys, const BathSpec& bath, Preparation prep, bool with_corr) {
    return with_corr ? f_corr(0.0, prep, sys, bath) : 0.0;
}

}  // namespace

ShortTimeCoeffs short_time_coeffs(const SystemParams& sys, const BathSpec& bath, Preparation prep,
                                  bool with_corr, const QuadraturePolicy& policy) {
    const SpinOperators ops = build_spin_operators(sys.n_atoms);
    ShortTimeCoeffs c;
    c.c0 = correlation_at_zero(bath, policy);
    c.f0 = with_corr ? f_corr(0.0, prep, sys, bath, policy) : 0.0;
    c.delta = sys.delta;
    c.coupling = ops.jx;
    c.hs_prime = system_hamiltonian(sys, ops) - c.f0 * ops.jx;
    return c;
}

Matrix rho_short(double t, const Matrix& rho0, const ShortTimeCoeffs& coeffs) {
    return ShortTimeExpansion(rho0, coeffs).rho(t);
}

ShortTimeExpansion::ShortTimeExpansion(const Matrix& rho0, const ShortTimeCoeffs& coeffs)
    : ops_(build_spin_operators(static_cast<int>(rho0.rows()) - 1)), rho0_(rho0) {
    using Sparse = Eigen::SparseMatrix<cplx>;
    const cplx i(0.0, 1.0);
    // H' and F are tridiagonal, which keeps N = 1000 cheap.
    const Sparse h = coeffs.hs_prime.sparseView();
    const Sparse f = coeffs.coupling.sparseView();
    const Sparse ff = f * f;
    const Matrix c1 = rho0 * h - h * rho0;
    rho1_ = i * c1;
    const Matrix frho = f * rho0;
    rho2_ = 0.5 * ((h * c1 - c1 * h) + coeffs.c0 * (2.0 * frho * f - ff * rho0 - rho0 * ff));

    const double tol = 1e-12 * (1.0 + rho2_.cwiseAbs().maxCoeff()) * static_cast<double>(rho0.rows());
    if (std::abs(rho1_.trace()) > tol || std::abs(rho2_.trace()) > tol ||
        hermiticity_error(rho1_) > tol || hermiticity_error(rho2_) > tol)
        throw NumericalConsistencyError("ShortTimeExpansion: expansion terms not traceless/Hermitian");

    o0_ = normalized_observables(rho0_, ops_);
    o1_ = normalized_observables(rho1_, ops_);
    o2_ = normalized_observables(rho2_, ops_);
}

Matrix ShortTimeExpansion::rho(double t) const { return rho0_ + t * rho1_ + (t * t) * rho2_; }

NormalizedObservables ShortTimeExpansion::observables(double t) const {
    const double t2 = t * t;
    NormalizedObservables o;
    o.jz = o0_.jz + t * o1_.jz + t2 * o2_.jz;
    o.jz2 = o0_.jz2 + t * o1_.jz2 + t2 * o2_.jz2;
    o.jy = o0_.jy + t * o1_.jy + t2 * o2_.jy;
    o.jx = o0_.jx + t * o1_.jx + t2 * o2_.jx;
    return o;
}

Trajectory ShortTimeExpansion::trajectory(std::span<const double> times) const {
    Trajectory traj;
    for (double t : times) traj.record(t, observables(t), rho(t));
    return traj;
}

double jz_short(double t, const SystemParams& sys, const BathSpec& bath, Preparation prep, bool with_corr) {
    require_down_z(prep);
    const double c0 = correlation_at_zero(bath);
    const double f0 = prepared_f0(sys, bath, prep, with_corr);
    const double d = sys.delta;
    return -(1.0 - 0.5 * t * t * (c0 + d * d + f0 * f0 - 2.0 * d * f0));
}

double jy_short(double t, const SystemParams& sys, const BathSpec& bath, Preparation prep, bool with_corr) {
    require_down_z(prep);
    return (sys.delta - prepared_f0(sys, bath, prep, with_corr)) * t;
}

ShortTimeValidity short_time_validity(double t, const SystemParams& sys, const ShortTimeCoeffs& coeffs) {
    const double shifted = coeffs.delta - coeffs.f0;
    return {t * sys.delta_tilde(), 0.5 * t * t * std::abs(coeffs.c0 + shifted * shifted)};
}

}  // namespace spinbath
