#include "spinbath/bath.hpp"

#include <cmath>

namespace spinbath {

namespace {

// t * exp(i x t / 2) * sinc(x t / 2) == int_0^t exp(i x tau) d tau.
std::complex<double> phase_integral(double x, double t) {
    const double h = 0.5 * x * t;
    const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
    return t * sinc * std::polar(1.0, h);
}

}  // namespace

void BathSpec::validate() const {
    if (!(g >= 0.0)) throw DomainError("BathSpec: coupling G must be >= 0");
    if (!(omega_c > 0.0)) throw DomainError("BathSpec: omega_c must be > 0");
    if (!(beta > 0.0)) throw DomainError("BathSpec: beta must be > 0");
}

double spectral_density(double omega, const BathSpec& bath) {
    if (omega < 0.0) throw DomainError("spectral_density: omega must be >= 0");
    return bath.g * omega * std::exp(-omega / bath.omega_c);
}

double omega_coth(double omega, double beta) {
    const double x = 0.5 * beta * omega;
    if (std::abs(x) < 1e-6) return (2.0 / beta) * (1.0 + x * x / 3.0);
    return omega / std::tanh(x);
}

double omega_bose(double omega, double beta) {
    const double x = beta * omega;
    if (std::abs(x) < 1e-8) return (1.0 / beta) * (1.0 - 0.5 * x);
    return omega / std::expm1(x);
}

double ohmic_tail_weight(const BathSpec& bath, double cutoff) {
    return bath.g * bath.omega_c * (cutoff + bath.omega_c) * std::exp(-cutoff / bath.omega_c);
}

std::complex<double> correlation(double tau, const BathSpec& bath, const QuadraturePolicy& policy) {
    bath.validate();
    if (bath.g == 0.0) return {0.0, 0.0};
    const double g = bath.g, wc = bath.omega_c, beta = bath.beta;
    auto integrand = [&](double w) {
        const double damp = g * std::exp(-w / wc);
        return std::complex<double>(damp * omega_coth(w, beta) * std::cos(w * tau),
                                    -damp * w * std::sin(w * tau));
    };
    return integrate_spectral<std::complex<double>>(integrand, bath, policy).value;
}

double correlation_at_zero(const BathSpec& bath, const QuadraturePolicy& policy) {
    bath.validate();
    if (bath.g == 0.0) return 0.0;
    auto integrand = [&](double w) { return bath.g * std::exp(-w / bath.omega_c) * omega_coth(w, bath.beta); };
    return integrate_spectral<double>(integrand, bath, policy).value;
}

std::complex<double> correlation_transform(double nu, double t, const BathSpec& bath,
                                           const QuadraturePolicy& policy) {
    bath.validate();
    if (bath.g == 0.0 || t == 0.0) return {0.0, 0.0};
    // coth(bw/2) cos(w tau) - i sin(w tau) = n(w) e^{i w tau} + (n(w) + 1) e^{-i w tau}
    auto integrand = [&](double w) {
        const double damp = bath.g * std::exp(-w / bath.omega_c);
        const double jn = damp * omega_bose(w, bath.beta);
        const double jn1 = jn + damp * w;
        return jn * phase_integral(w - nu, t) + jn1 * phase_integral(-w - nu, t);
    };
    std::vector<double> breaks;
    if (nu != 0.0) breaks.push_back(std::abs(nu));
    return integrate_spectral<std::complex<double>>(integrand, bath, policy, breaks).value;
}

}  // namespace spinbath
