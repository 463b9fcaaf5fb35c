// short_time.hpp: second-order Taylor expansion of rho(t) about t = 0
//
//   rho(t) ~ rho + i[rho, H'] t + (t^2/2) { [H', [rho, H']] + C(0) (2 F rho F - F^2 rho - rho F^2) },
//   H' = H_S - f_corr(0) F.
//
// Valid for t * delta_tilde << 1 (roughly t < 0.1 / delta_tilde).

#pragma once

#include <span>

#include "spinbath/bath.hpp"
#include "spinbath/corr_kernel.hpp"
#include "spinbath/spin_algebra.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

struct ShortTimeCoeffs {
    double c0{0.0};     // Re C(0)
    double f0{0.0};     // f_corr(0), 0 without correlations
    double delta{0.0};  // Delta
    Matrix hs_prime;    // H_S - f0 F
    Matrix coupling;    // F = J_x
};

ShortTimeCoeffs short_time_coeffs(const SystemParams& sys, const BathSpec& bath, Preparation prep,
                                  bool with_corr, const QuadraturePolicy& policy = {});

Matrix rho_short(double t, const Matrix& rho0, const ShortTimeCoeffs& coeffs);

/// rho0 + t rho1 + t^2 rho2 with rho1, rho2 built once.
class ShortTimeExpansion {
public:
    ShortTimeExpansion(const Matrix& rho0, const ShortTimeCoeffs& coeffs);

    Matrix rho(double t) const;
    /// Observables are linear in rho, so each is a quadratic in t.
    NormalizedObservables observables(double t) const;
    Trajectory trajectory(std::span<const double> times) const;

    const Matrix& first_order() const { return rho1_; }
    const Matrix& second_order() const { return rho2_; }

private:
    SpinOperators ops_;
    Matrix rho0_, rho1_, rho2_;
    NormalizedObservables o0_, o1_, o2_;
};

/// 2<J_z>/N = -(1 - (t^2/2) [C(0) + Delta^2 + f0^2 - 2 Delta f0]); f0 = 0 without
/// correlations. DownZ only, otherwise UnsupportedModelError.
double jz_short(double t, const SystemParams& sys, const BathSpec& bath, Preparation prep, bool with_corr);

/// 2<J_y>/N = (Delta - f0) t. DownZ only.
double jy_short(double t, const SystemParams& sys, const BathSpec& bath, Preparation prep, bool with_corr);

/// Heuristics reported alongside short-time output.
struct ShortTimeValidity {
    double t_delta_tilde{0.0};  // t * delta_tilde
    double t2_curvature{0.0};   // (t^2 / 2) |C(0) + (Delta - f0)^2|
};

ShortTimeValidity short_time_validity(double t, const SystemParams& sys, const ShortTimeCoeffs& coeffs);

}  // namespace spinbath
