// corr_kernel.hpp: drive term f_corr(t) left behind by preparing the spins out of the
// correlated spin-bath equilibrium state

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

/// Projective preparation applied at t = 0.
enum class Preparation {
    DownZ,  // J_z |psi> = -N/2 |psi>
    UpZ,    // J_z |psi> = +N/2 |psi>
    PlusX,  // J_x |psi> = +N/2 |psi>
};

std::string to_string(Preparation prep);
Preparation preparation_from_string(const std::string& name);

/// f_corr(t) = N int J(w) cos(w t) { A / w + D / (dt^2 - w^2) [dt coth(b w/2) - w coth(b dt/2)] } dw
/// with dt = delta_eff.
struct PrepCoefficients {
    double a_coef{0.0};
    double d_coef{0.0};
    double delta_eff{0.0};
};

/// Factors of the normal-ordered form of exp(-beta H_S) and of the imaginary-time
/// profile  <psi| e^{-beta H_S} e^{l H_S} F e^{-l H_S} |psi> / Z'
///        = (N/2) [script_a + script_b cosh(l delta_eff - script_c)].
///
/// script_b carries its sign (negative for UpZ), so the profile is always written
/// with a plus. PlusX values refer to the rotated frame (eps_r = Delta,
/// Delta_r = -eps) in which the prepared state is the top J_z state.
struct ThermalSpinFactors {
    double mu{1.0};
    double f{0.0};
    double f_z{0.0};
    double kappa{0.0};
    double script_a{0.0};
    double script_b{0.0};
    double script_c{0.0};
    double log_z_prime{0.0};  // N ln mu
    double z_prime{1.0};      // mu^N, may overflow to inf for very large N

    /// The imaginary-time profile divided by N/2.
    double profile(double lambda, double delta_eff) const;
};

ThermalSpinFactors thermal_factors(Preparation prep, const SystemParams& sys, double beta);

PrepCoefficients coefficients(Preparation prep, const SystemParams& sys, double beta);

/// w * [dt coth(b w/2) - w coth(b dt/2)] / (dt^2 - w^2): the D-bracket of f_corr
/// times w. Inside |w - dt| < series_window * dt the removable singularity is
/// replaced by its first-order Taylor expansion about w = dt.
double bracket_kernel(double omega, double delta_eff, double beta);

inline constexpr double series_window = 1e-3;

/// Closed-form f_corr(t), continuum bath.
double f_corr(double t, Preparation prep, const SystemParams& sys, const BathSpec& bath,
              const QuadraturePolicy& policy = {});

/// Brute-force evaluation for a discretised bath: imaginary-time profile as a
/// spectral sum in the rotated H_S eigenbasis, Q1/Q2 by composite Gauss-Legendre over
/// lambda in [0, beta] (lambda_panels panels of 16 nodes), then the thermal mode
/// sum  sum_k |g_k|^2 [Q1 (1 + n_k) e^{i w_k t} + Q2 n_k e^{-i w_k t}]
/// over n_modes midpoint modes on [0, 20 omega_c].
std::vector<std::complex<double>> f_corr_oracle(std::span<const double> times, Preparation prep,
                                                const SystemParams& sys, const BathSpec& bath,
                                                int n_modes, int lambda_panels);

std::complex<double> f_corr_oracle(double t, Preparation prep, const SystemParams& sys,
                                   const BathSpec& bath, int n_modes, int lambda_panels);

/// <psi| e^{-(beta - l) H_S} F e^{-l H_S} |psi> / <psi| e^{-beta H_S} |psi> as an
/// explicit sum over H_S eigenstates; F = J_x.
double imaginary_time_profile(double lambda, Preparation prep, const SystemParams& sys, double beta);

/// The prepared pure state in the J_z basis.
Vector prepared_state(Preparation prep, const SpinOperators& ops);

Matrix initial_state(Preparation prep, const SpinOperators& ops);

}  // namespace spinbath
