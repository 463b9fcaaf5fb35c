#include "spinbath/corr_kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

// Frame in which the preparation is a J_z extremal state and the closed forms apply.
struct PrepFrame {
    double eps;
    double delta;
    double delta_tilde;
};

PrepFrame prep_frame(Preparation prep, const SystemParams& sys) {
    const double dt = sys.delta_tilde();
    if (!(dt > 0.0)) throw DegenerateHamiltonianError("eps = Delta = 0 gives a degenerate H_S");
    if (prep == Preparation::PlusX) return {sys.delta, -sys.epsilon, dt};
    return {sys.epsilon, sys.delta, dt};
}

struct GaussLegendre16 {
    std::array<double, 16> x{};
    std::array<double, 16> w{};

    GaussLegendre16() {
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre16& gauss_legendre16() {
    static const GaussLegendre16 rule;
    return rule;
}

}  // namespace

std::string to_string(Preparation prep) {
    switch (prep) {
        case Preparation::DownZ: return "down_z";
        case Preparation::UpZ: return "up_z";
        case Preparation::PlusX: return "plus_x";
    }
    return "unknown";
}

Preparation preparation_from_string(const std::string& name) {
    if (name == "down_z") return Preparation::DownZ;
    if (name == "up_z") return Preparation::UpZ;
    if (name == "plus_x") return Preparation::PlusX;
    throw std::invalid_argument("unknown preparation '" + name + "' (expected down_z, up_z, plus_x)");
}

double ThermalSpinFactors::profile(double lambda, double delta_eff) const {
    return script_a + script_b * std::cosh(lambda * delta_eff - script_c);
}

ThermalSpinFactors thermal_factors(Preparation prep, const SystemParams& sys, double beta) {
    if (!(beta > 0.0)) throw DomainError("thermal_factors: beta must be > 0");
    const PrepFrame fr = prep_frame(prep, sys);
    const double x = 0.5 * beta * fr.delta_tilde;
    const double s = std::sinh(x), c = std::cosh(x);
    const double e = fr.eps / fr.delta_tilde;
    const double d = fr.delta / fr.delta_tilde;

    ThermalSpinFactors tf;
    tf.script_c = x;
    switch (prep) {
        case Preparation::DownZ:
            tf.mu = c + e * s;
            tf.kappa = -d * s - e * d * c;
            tf.script_b = e * d / tf.mu;
            break;
        case Preparation::UpZ:
            tf.mu = c - e * s;
            tf.kappa = -d * s + e * d * c;
            tf.script_b = -e * d / tf.mu;
            break;
        case Preparation::PlusX:
            // rotated frame: coupling J_z, state |N/2>
            tf.mu = c - e * s;
            tf.kappa = -e * s + e * e * c;
            tf.script_b = d * d / tf.mu;
            break;
    }
    tf.f = -d * s / tf.mu;
    tf.f_z = -2.0 * std::log(tf.mu);
    tf.script_a = tf.kappa / tf.mu;
    tf.log_z_prime = sys.n_atoms * std::log(tf.mu);
    tf.z_prime = std::exp(tf.log_z_prime);
    return tf;
}

PrepCoefficients coefficients(Preparation prep, const SystemParams& sys, double beta) {
    if (!(beta > 0.0)) throw DomainError("coefficients: beta must be > 0");
    const PrepFrame fr = prep_frame(prep, sys);
    const double dt = fr.delta_tilde;
    const double ct = coth(0.5 * beta * dt);

    PrepCoefficients pc;
    pc.delta_eff = dt;
    switch (prep) {
        case Preparation::DownZ:
            if (sys.delta == 0.0) return pc;
            pc.a_coef = -(fr.delta / dt) * (dt + fr.eps * ct) / (dt * ct + fr.eps);
            pc.d_coef = (fr.eps * fr.delta / dt) / (dt * ct + fr.eps);
            break;
        case Preparation::UpZ:
            if (sys.delta == 0.0) return pc;
            pc.a_coef = -(fr.delta / dt) * (dt - fr.eps * ct) / (dt * ct - fr.eps);
            pc.d_coef = -(fr.eps * fr.delta / dt) / (dt * ct - fr.eps);
            break;
        case Preparation::PlusX:
            pc.a_coef = -(fr.eps / dt) * (dt - fr.eps * ct) / (dt * ct - fr.eps);
            pc.d_coef = (fr.delta * fr.delta / (dt * dt)) / (ct - fr.eps / dt);
            break;
    }
    return pc;
}

double bracket_kernel(double omega, double delta_eff, double beta) {
    const double d = delta_eff;
    const double x = omega - d;
    if (std::abs(x) < series_window * d) {
        const double b = 0.5 * beta;
        const double c = coth(b * d);
        const double q = c * c - 1.0;  // csch^2
        const double s1 = -d * c - b * d * d * q;
        const double s2 = d * (-2.0 * b * q + 2.0 * b * b * d * q * c) - 2.0 * c;
        const double p0 = -s1 / (2.0 * d);
        const double p1 = -s2 / (4.0 * d) + s1 / (4.0 * d * d);
        return p0 + p1 * x;
    }
    return (d * omega_coth(omega, beta) - omega * omega * coth(0.5 * beta * d)) / (d * d - omega * omega);
}

double f_corr(double t, Preparation prep, const SystemParams& sys, const BathSpec& bath,
              const QuadraturePolicy& policy) {
    bath.validate();
    const PrepCoefficients pc = coefficients(prep, sys, bath.beta);
    if (bath.g == 0.0 || (pc.a_coef == 0.0 && pc.d_coef == 0.0)) return 0.0;

    const double dt = pc.delta_eff;
    auto integrand = [&](double w) {
        double brace = pc.a_coef;
        if (pc.d_coef != 0.0) brace += pc.d_coef * bracket_kernel(w, dt, bath.beta);
        return bath.g * std::exp(-w / bath.omega_c) * std::cos(w * t) * brace;
    };
    const std::vector<double> breaks{dt * (1.0 - series_window), dt, dt * (1.0 + series_window)};
    const auto r = integrate_spectral<double>(integrand, bath, policy, breaks);
    return static_cast<double>(sys.n_atoms) * r.value;
}

namespace {

// H_S = dt R J_z R^dag with R = exp(-i theta J_y), theta = atan2(Delta, eps).
// In the rotated basis the prepared states are single-term Wigner-d columns,
// so components far below double epsilon stay relatively accurate; a numerical
// eigensolver loses them once exp(beta * dt * N) amplifies its rounding.
struct RotatedPreparation {
    RealVector energies;  // dt * m, shifted so the lowest is 0
    RealVector psi;       // <m| R^dag |psi>
    Eigen::MatrixXd f;    // R^dag J_x R = cos(theta) J_x + sin(theta) J_z
};

// d^j_{m,j}(b) for m = -j..j
RealVector wigner_column_top(int n, double b) {
    RealVector d(n + 1);
    const double c = std::cos(0.5 * b), s = std::sin(0.5 * b);
    for (int k = 0; k <= n; ++k) {  // j + m = k
        const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        d(k) = std::exp(0.5 * log_binom) * std::pow(c, k) * std::pow(s, n - k);
    }
    return d;
}

RotatedPreparation rotate_preparation(Preparation prep, const SystemParams& sys) {
    const int n = sys.n_atoms;
    const SpinOperators ops = build_spin_operators(n);
    const double theta = std::atan2(sys.delta, sys.epsilon);
    RotatedPreparation r;
    r.energies.resize(n + 1);
    for (int k = 0; k <= n; ++k) r.energies(k) = sys.delta_tilde() * k;
    switch (prep) {
        case Preparation::DownZ: {
            // d^j_{m,-j}(-theta) = d^j_{-m,j}(theta)
            const RealVector top = wigner_column_top(n, theta);
            r.psi = top.reverse();
            break;
        }
        case Preparation::UpZ: {
            // d^j_{m,j}(-theta) = (-1)^{j-m} d^j_{m,j}(theta)
            r.psi = wigner_column_top(n, theta);
            for (int k = 0; k <= n; ++k)
                if ((n - k) % 2) r.psi(k) = -r.psi(k);
            break;
        }
        case Preparation::PlusX:
            // |+x> = exp(-i pi/2 J_y)|j, j>
            r.psi = wigner_column_top(n, 0.5 * std::numbers::pi - theta);
            break;
    }
    r.f = std::cos(theta) * ops.jx.real() + std::sin(theta) * ops.jz.real();
    return r;
}

double profile(double lambda, const RotatedPreparation& r, double beta) {
    const Eigen::Index d = r.psi.size();
    RealVector left(d), right(d);
    double z = 0.0;
    for (Eigen::Index a = 0; a < d; ++a) {
        const double ea = r.energies(a);
        left(a) = r.psi(a) * std::exp(-(beta - lambda) * ea);
        right(a) = r.psi(a) * std::exp(-lambda * ea);
        z += r.psi(a) * r.psi(a) * std::exp(-beta * ea);
    }
    return left.dot(r.f * right) / z;
}

}  // namespace

double imaginary_time_profile(double lambda, Preparation prep, const SystemParams& sys, double beta) {
    return profile(lambda, rotate_preparation(prep, sys), beta);
}

std::vector<std::complex<double>> f_corr_oracle(std::span<const double> times, Preparation prep,
                                                const SystemParams& sys, const BathSpec& bath,
                                                int n_modes, int lambda_panels) {
    if (n_modes < 1 || lambda_panels < 1)
        throw DomainError("f_corr_oracle: discretisation parameters must be positive");
    bath.validate();
    const double beta = bath.beta;
    const RotatedPreparation rot = rotate_preparation(prep, sys);

    const auto& gl = gauss_legendre16();
    const double h = beta / lambda_panels;
    std::vector<double> lam, wts, prof;
    for (int p = 0; p < lambda_panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < 16; ++i) {
            lam.push_back(mid + 0.5 * h * gl.x[i]);
            wts.push_back(0.5 * h * gl.w[i]);
        }
    }
    prof.reserve(lam.size());
    for (double l : lam) prof.push_back(profile(l, rot, beta));

    const double dw = 20.0 * bath.omega_c / n_modes;
    std::vector<std::complex<double>> out(times.size(), {0.0, 0.0});
    for (int k = 0; k < n_modes; ++k) {
        const double w = (k + 0.5) * dw;
        const double g2 = spectral_density(w, bath) * dw;
        double q1 = 0.0, q2 = 0.0;
        for (std::size_t j = 0; j < lam.size(); ++j) {
            q1 += wts[j] * std::exp(-lam[j] * w) * prof[j];
            q2 += wts[j] * std::exp(lam[j] * w) * prof[j];
        }
        const double n = 1.0 / std::expm1(beta * w);
        const double forward = g2 * q1 * (1.0 + n);
        const double backward = g2 * q2 * n;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double ph = w * times[i];
            out[i] += forward * std::polar(1.0, ph) + backward * std::polar(1.0, -ph);
        }
    }
    return out;
}

std::complex<double> f_corr_oracle(double t, Preparation prep, const SystemParams& sys,
                                   const BathSpec& bath, int n_modes, int lambda_panels) {
    const double ts[] = {t};
    return f_corr_oracle(std::span<const double>(ts), prep, sys, bath, n_modes, lambda_panels).front();
}

Vector prepared_state(Preparation prep, const SpinOperators& ops) {
    const Eigen::Index d = ops.dim;
    Vector psi = Vector::Zero(d);
    switch (prep) {
        case Preparation::DownZ: psi(0) = 1.0; break;
        case Preparation::UpZ: psi(d - 1) = 1.0; break;
        case Preparation::PlusX: {
            // Top J_x state: amplitudes sqrt(C(N, k) / 2^N), all positive.
            const int n = ops.n_atoms;
            for (int k = 0; k <= n; ++k) {
                const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
                psi(k) = std::exp(0.5 * (log_c - n * std::numbers::ln2));
            }
            psi.normalize();
            break;
        }
    }
    return psi;
}

Matrix initial_state(Preparation prep, const SpinOperators& ops) {
    const Vector psi = prepared_state(prep, ops);
    return psi * psi.adjoint();
}

}  // namespace spinbath
