// exact_dephasing.hpp: exact solution of the pure-dephasing large-spin model
//
// Dephasing frame: H = eps0 J_z + J_z sum_k (g_k b_k^dag + g_k^* b_k) + sum_k w_k b_k^dag b_k.
// The main-frame model with eps = 0 (H_S = Delta J_x, coupling J_x) maps onto it by
// going to the J_x eigenbasis, with eps0 = Delta.

#pragma once

#include <span>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/corr_kernel.hpp"
#include "spinbath/spin_algebra.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

/// gamma(t), Delta(t), Phi(t) and C at one time. gamma_t and delta_t use the
/// 1/t convention, so the exponents are gamma_t * t and delta_t * t.
struct DephasingFactors {
    double t{0.0};
    double gamma_t{0.0};
    double delta_t{0.0};
    double phi_t{0.0};
    double c_const{0.0};
};

/// Continuum (Ohmic) factors by quadrature. t = 0 gives the analytic limits.
DephasingFactors dephasing_factors(double t, const BathSpec& bath, const QuadraturePolicy& policy = {});

/// Factors of a discrete bath: modes omega_k with couplings |g_k|^2.
DephasingFactors dephasing_factors_discrete(double t, std::span<const double> omegas,
                                            std::span<const double> g2, double beta);

/// rho_mn(0) e^{-i eps0 (m-n) t} e^{-i Delta(t) (m^2-n^2) t} e^{-gamma(t) (m-n)^2 t}.
/// rho0 lives in the J_z basis of the dephasing frame (m = -N/2 first).
Matrix exact_rho_uncorrelated(const Matrix& rho0, double eps0, const DephasingFactors& fac);
Matrix exact_rho_uncorrelated(double t, const Matrix& rho0, double eps0, const BathSpec& bath);

/// Correlated-preparation factor F_c for coherences of order d = n - m, indexed
/// d + N. weights are |<l|psi>|^2 for l = -N/2 .. N/2.
std::vector<cplx> correlation_factors(std::span<const double> weights, double eps0, double beta,
                                      const DephasingFactors& fac);

/// The uncorrelated result times F_c^{mn}(t).
Matrix exact_rho_correlated(const Matrix& rho0, std::span<const double> weights, double eps0, double beta,
                            const DephasingFactors& fac);
Matrix exact_rho_correlated(double t, const Matrix& rho0, std::span<const double> weights, double eps0,
                            const BathSpec& bath);

/// Main-frame solver for eps = 0. The state and observables are rotated once
/// into the J_x eigenbasis; each time point is then elementwise.
class DephasingSolver {
public:
    /// Throws UnsupportedModelError if sys.epsilon != 0.
    DephasingSolver(Preparation prep, const SystemParams& sys, const BathSpec& bath,
                    const QuadraturePolicy& policy = {});

    /// rho(t) in the J_x eigenbasis.
    Matrix rho_rotated(double t, bool with_corr) const;
    NormalizedObservables observables(double t, bool with_corr) const;
    Trajectory trajectory(std::span<const double> times, bool with_corr) const;

    /// |<l|psi>|^2 over the J_x eigenvalues l = -N/2 .. N/2.
    const std::vector<double>& weights() const { return weights_; }
    /// Columns: J_x eigenvectors in the J_z basis, ascending eigenvalue.
    const Matrix& basis() const { return w_; }

private:
    NormalizedObservables measure(const Matrix& rho) const;

    SystemParams sys_;
    BathSpec bath_;
    QuadraturePolicy policy_;
    Matrix w_;
    Matrix rho0_;
    std::vector<double> weights_;
    Matrix jz_, jz2_, jy_, jx_;  // main-frame observables in the rotated basis
};

/// 2<J_z>/N of the main frame at time t.
double exact_jz_mainframe(double t, Preparation prep, const SystemParams& sys, const BathSpec& bath,
                          bool with_corr);

}  // namespace spinbath
