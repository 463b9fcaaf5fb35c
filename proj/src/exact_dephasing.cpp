#include "spinbath/exact_dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// (sin x - x) / x^3, stable near 0.
double sin_minus_x(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return -1.0 / 6.0 + x2 / 120.0 - x2 * x2 / 5040.0;
    }
    return (std::sin(x) - x) / (x * x * x);
}

}  // namespace

DephasingFactors dephasing_factors(double t, const BathSpec& bath, const QuadraturePolicy& policy) {
    bath.validate();
    if (t < 0.0) throw DomainError("dephasing_factors: t must be >= 0");
    DephasingFactors fac;
    fac.t = t;
    fac.c_const = bath.g * bath.omega_c;
    if (t == 0.0 || bath.g == 0.0) return fac;

    const double g = bath.g, wc = bath.omega_c, beta = bath.beta;
    // (1 - cos wt) / w^2 = (t^2 / 2) sinc^2(wt / 2)
    auto gamma_integrand = [&](double w) {
        const double s = sinc(0.5 * w * t);
        return g * std::exp(-w / wc) * omega_coth(w, beta) * 0.5 * t * t * s * s;
    };
    // (sin wt - wt) / w^2 times J
    auto delta_integrand = [&](double w) { return g * std::exp(-w / wc) * w * w * t * t * t * sin_minus_x(w * t); };
    auto phi_integrand = [&](double w) { return g * std::exp(-w / wc) * t * sinc(w * t); };

    fac.gamma_t = integrate_spectral<double>(gamma_integrand, bath, policy).value / t;
    fac.delta_t = integrate_spectral<double>(delta_integrand, bath, policy).value / t;
    fac.phi_t = integrate_spectral<double>(phi_integrand, bath, policy).value;
    return fac;
}

DephasingFactors dephasing_factors_discrete(double t, std::span<const double> omegas,
                                            std::span<const double> g2, double beta) {
    if (omegas.size() != g2.size()) throw DomainError("dephasing_factors_discrete: size mismatch");
    DephasingFactors fac;
    fac.t = t;
    double gt = 0.0, dt = 0.0;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        const double w = omegas[k];
        if (!(w > 0.0)) throw DomainError("dephasing_factors_discrete: mode frequencies must be > 0");
        const double s = sinc(0.5 * w * t);
        gt += g2[k] * 0.5 * t * t * s * s / std::tanh(0.5 * beta * w);
        dt += g2[k] * w * t * t * t * sin_minus_x(w * t);
        fac.phi_t += g2[k] * std::sin(w * t) / (w * w);
        fac.c_const += g2[k] / w;
    }
    if (t > 0.0) {
        fac.gamma_t = gt / t;
        fac.delta_t = dt / t;
    }
    return fac;
}

Matrix exact_rho_uncorrelated(const Matrix& rho0, double eps0, const DephasingFactors& fac) {
    const Eigen::Index d = rho0.rows();
    const double j = 0.5 * static_cast<double>(d - 1);
    const double t = fac.t;
    Matrix out(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        const double n = -j + static_cast<double>(b);
        for (Eigen::Index a = 0; a < d; ++a) {
            const double m = -j + static_cast<double>(a);
            const double phase = -eps0 * (m - n) * t - fac.delta_t * t * (m * m - n * n);
            const double damp = -fac.gamma_t * t * (m - n) * (m - n);
            out(a, b) = rho0(a, b) * std::exp(damp) * std::polar(1.0, phase);
        }
    }
    return out;
}

Matrix exact_rho_uncorrelated(double t, const Matrix& rho0, double eps0, const BathSpec& bath) {
    return exact_rho_uncorrelated(rho0, eps0, dephasing_factors(t, bath));
}

std::vector<cplx> correlation_factors(std::span<const double> weights, double eps0, double beta,
                                      const DephasingFactors& fac) {
    const std::size_t d = weights.size();
    const double j = 0.5 * static_cast<double>(d - 1);
    // log-domain thermal weights, shifted by their maximum
    std::vector<double> logw(d, -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < d; ++k) {
        if (weights[k] < 0.0) throw DomainError("correlation_factors: negative weight");
        if (weights[k] == 0.0) continue;
        const double l = -j + static_cast<double>(k);
        logw[k] = std::log(weights[k]) - beta * eps0 * l + beta * l * l * fac.c_const;
        top = std::max(top, logw[k]);
    }
    if (!std::isfinite(top)) throw DomainError("correlation_factors: all weights vanish");
    std::vector<double> w(d);
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        w[k] = std::exp(logw[k] - top);
        norm += w[k];
    }

    std::vector<cplx> out(2 * d - 1);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const double diff = static_cast<double>(idx) - static_cast<double>(d - 1);  // n - m
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            if (w[k] == 0.0) continue;
            const double l = -j + static_cast<double>(k);
            acc += w[k] * std::polar(1.0, -2.0 * diff * l * fac.phi_t);
        }
        out[idx] = acc / norm;
    }
    return out;
}

Matrix exact_rho_correlated(const Matrix& rho0, std::span<const double> weights, double eps0, double beta,
                            const DephasingFactors& fac) {
    const Eigen::Index d = rho0.rows();
    if (static_cast<Eigen::Index>(weights.size()) != d)
        throw DomainError("exact_rho_correlated: weights size must match the density matrix");
    Matrix out = exact_rho_uncorrelated(rho0, eps0, fac);
    const std::vector<cplx> fc = correlation_factors(weights, eps0, beta, fac);
    for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index a = 0; a < d; ++a) out(a, b) *= fc[static_cast<std::size_t>(b - a + d - 1)];
    return out;
}

Matrix exact_rho_correlated(double t, const Matrix& rho0, std::span<const double> weights, double eps0,
                            const BathSpec& bath) {
    return exact_rho_correlated(rho0, weights, eps0, bath.beta, dephasing_factors(t, bath));
}

DephasingSolver::DephasingSolver(Preparation prep, const SystemParams& sys, const BathSpec& bath,
                                 const QuadraturePolicy& policy)
    : sys_(sys), bath_(bath), policy_(policy) {
    if (sys.epsilon != 0.0)
        throw UnsupportedModelError("exact dephasing solution needs eps = 0 (got eps = " +
                                    std::to_string(sys.epsilon) + ")");
    bath.validate();
    const SpinOperators ops = build_spin_operators(sys.n_atoms);

    // J_x is real symmetric; its eigenvalues are exactly -N/2 .. N/2.
    const Eigen::MatrixXd jx = ops.jx.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jx);
    if (solver.info() != Eigen::Success) throw NumericalConsistencyError("DephasingSolver: eigensolver failed");
    const Eigen::MatrixXd w = solver.eigenvectors();
    w_ = w.cast<cplx>();

    const Vector psi = w_.adjoint() * prepared_state(prep, ops);
    rho0_ = psi * psi.adjoint();
    weights_.resize(static_cast<std::size_t>(ops.dim));
    for (Eigen::Index k = 0; k < ops.dim; ++k) weights_[static_cast<std::size_t>(k)] = std::norm(psi(k));

    const Eigen::VectorXd m = ops.jz.diagonal().real();
    const Eigen::MatrixXd mw = m.asDiagonal() * w;
    const Eigen::MatrixXd m2w = m.cwiseAbs2().asDiagonal() * w;
    const Eigen::SparseMatrix<double> jy_im = ops.jy.imag().sparseView();
    const Eigen::MatrixXd jyw = jy_im * w;
    jz_ = (w.transpose() * mw).cast<cplx>();
    jz2_ = (w.transpose() * m2w).cast<cplx>();
    jx_ = solver.eigenvalues().cast<cplx>().asDiagonal();
    jy_ = cplx(0.0, 1.0) * (w.transpose() * jyw).cast<cplx>();
}

Matrix DephasingSolver::rho_rotated(double t, bool with_corr) const {
    const DephasingFactors fac = dephasing_factors(t, bath_, policy_);
    // eps0 = Delta: H_S = Delta J_x is the level splitting in the J_x basis.
    if (with_corr) return exact_rho_correlated(rho0_, weights_, sys_.delta, bath_.beta, fac);
    return exact_rho_uncorrelated(rho0_, sys_.delta, fac);
}

NormalizedObservables DephasingSolver::measure(const Matrix& rho) const {
    const double n = static_cast<double>(sys_.n_atoms);
    NormalizedObservables o;
    o.jz = 2.0 * expect(rho, jz_) / n;
    o.jz2 = 4.0 * expect(rho, jz2_) / (n * n);
    o.jy = 2.0 * expect(rho, jy_) / n;
    o.jx = 2.0 * expect(rho, jx_) / n;
    return o;
}

NormalizedObservables DephasingSolver::observables(double t, bool with_corr) const {
    return measure(rho_rotated(t, with_corr));
}

Trajectory DephasingSolver::trajectory(std::span<const double> times, bool with_corr) const {
    Trajectory traj;
    for (double t : times) {
        const Matrix rho = rho_rotated(t, with_corr);
        traj.record(t, measure(rho), rho);
    }
    return traj;
}

double exact_jz_mainframe(double t, Preparation prep, const SystemParams& sys, const BathSpec& bath,
                          bool with_corr) {
    return DephasingSolver(prep, sys, bath).observables(t, with_corr).jz;
}

}  // namespace spinbath
