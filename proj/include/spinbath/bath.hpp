// bath.hpp: Ohmic bosonic bath, its correlation function and spectral integrals

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"

namespace spinbath {

/// J(omega) = G omega exp(-omega / omega_c) at inverse temperature beta.
struct BathSpec {
    double g{0.05};
    double omega_c{5.0};
    double beta{1.0};

    void validate() const;
};

double spectral_density(double omega, const BathSpec& bath);

/// omega * coth(beta omega / 2), finite (-> 2/beta) at omega = 0.
double omega_coth(double omega, double beta);

/// Bose occupation times omega: omega / (exp(beta omega) - 1), finite at omega = 0.
double omega_bose(double omega, double beta);

/// Upper frequency of the truncated spectral integrals.
inline double spectral_cutoff(const BathSpec& bath, const QuadraturePolicy& policy) {
    return policy.tail_cutoff_multiplier * bath.omega_c;
}

/// Analytic bound on int_L^inf J(omega) d omega = G omega_c (L + omega_c) exp(-L / omega_c).
double ohmic_tail_weight(const BathSpec& bath, double cutoff);

/// int_0^inf `integrand`(omega) d omega where `integrand` already carries the
/// factor J(omega). The range is truncated at tail_cutoff_multiplier * omega_c
/// and ohmic_tail_weight times sup |integrand / J| on the tail is added to the
/// reported error.
template <typename Value, typename F>
QuadResult<Value> integrate_spectral(F&& integrand, const BathSpec& bath,
                                     const QuadraturePolicy& policy,
                                     std::vector<double> singular_points = {}) {
    const double cutoff = spectral_cutoff(bath, policy);
    auto result = integrate<Value>(integrand, 0.0, cutoff, policy, std::move(singular_points));

    double sup = 0.0;
    for (int k = 0; k <= 32; ++k) {
        const double w = cutoff * (1.0 + 2.0 * k / 32.0);
        const double jw = spectral_density(w, bath);
        if (jw > 0.0) sup = std::max(sup, detail::magnitude(integrand(w)) / jw);
    }
    result.error += ohmic_tail_weight(bath, cutoff) * sup;
    return result;
}

/// C(tau) = int J(omega) [coth(beta omega/2) cos(omega tau) - i sin(omega tau)] d omega.
std::complex<double> correlation(double tau, const BathSpec& bath,
                                 const QuadraturePolicy& policy = {});

/// Re C(0) = int J(omega) coth(beta omega / 2) d omega.
double correlation_at_zero(const BathSpec& bath, const QuadraturePolicy& policy = {});

/// int_0^t C(tau) exp(-i nu tau) d tau, evaluated in the frequency domain with the
/// tau integral done in closed form.
std::complex<double> correlation_transform(double nu, double t, const BathSpec& bath,
                                           const QuadraturePolicy& policy = {});

}  // namespace spinbath
