#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinbath/corr_kernel.hpp"
#include "spinbath/errors.hpp"

using namespace spinbath;

namespace {

const Preparation all_preps[] = {Preparation::DownZ, Preparation::UpZ, Preparation::PlusX};

// Same profile through a numerical eigensolver; fine while exp(beta * dt * N) is modest.
double profile_by_diagonalisation(double lam, Preparation prep, const SystemParams& sys, double beta) {
    const SpinOperators ops = build_spin_operators(sys.n_atoms);
    const EigenSystem eig = diagonalize_hs(sys, ops);
    const Vector psi = eig.vectors.adjoint() * prepared_state(prep, ops);
    const Matrix fe = eig.vectors.adjoint() * ops.jx * eig.vectors;
    const double e0 = eig.energies.minCoeff();
    Vector left(ops.dim), right(ops.dim);
    double z = 0.0;
    for (Eigen::Index a = 0; a < ops.dim; ++a) {
        const double ea = eig.energies(a) - e0;
        left(a) = psi(a) * std::exp(-(beta - lam) * ea);
        right(a) = psi(a) * std::exp(-lam * ea);
        z += std::norm(psi(a)) * std::exp(-beta * ea);
    }
    return left.dot(fe * right).real() / z;
}

}  // namespace

TEST_SUITE("corr_kernel") {

TEST_CASE("preparation names") {
    for (Preparation p : all_preps) CHECK(preparation_from_string(to_string(p)) == p);
    CHECK_THROWS_AS(preparation_from_string("sideways"), std::invalid_argument);
}

TEST_CASE("prepared states") {
    const SpinOperators ops = build_spin_operators(6);
    const Vector down = prepared_state(Preparation::DownZ, ops);
    const Vector up = prepared_state(Preparation::UpZ, ops);
    const Vector plus = prepared_state(Preparation::PlusX, ops);
    CHECK((ops.jz * down + 3.0 * down).norm() < 1e-14);
    CHECK((ops.jz * up - 3.0 * up).norm() < 1e-14);
    CHECK((ops.jx * plus - 3.0 * plus).norm() < 1e-12);
    CHECK(plus.norm() == doctest::Approx(1.0).epsilon(1e-15));
    const Matrix rho = initial_state(Preparation::PlusX, ops);
    CHECK(trace_error(rho) < 1e-15);
    CHECK(hermiticity_error(rho) == 0.0);
}

TEST_CASE("imaginary-time profile has the cosh form") {
    for (Preparation prep : all_preps) {
        for (int n : {1, 3, 4}) {
            const SystemParams sys{0.8, 1.9, n};
            const double beta = 1.3;
            const ThermalSpinFactors tf = thermal_factors(prep, sys, beta);
            for (double lam : {0.0, 0.4, 1.0, 1.3}) {
                CAPTURE(to_string(prep));
                CAPTURE(n);
                CAPTURE(lam);
                const double brute = imaginary_time_profile(lam, prep, sys, beta);
                CHECK(0.5 * n * tf.profile(lam, sys.delta_tilde()) == doctest::Approx(brute).epsilon(1e-12));
                CHECK(profile_by_diagonalisation(lam, prep, sys, beta) == doctest::Approx(brute).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("profile stays accurate when the ground-state overlap is tiny") {
    // plus_x nearly anti-aligned with the field: ground-state weight ~ 1e-51 at N = 18
    const SystemParams sys{0.3, 3.9, 18};
    const ThermalSpinFactors tf = thermal_factors(Preparation::PlusX, sys, 1.0);
    for (double lam : {0.0, 0.5, 1.0})
        CHECK(imaginary_time_profile(lam, Preparation::PlusX, sys, 1.0) ==
              doctest::Approx(9.0 * tf.profile(lam, sys.delta_tilde())).epsilon(1e-10));
}

TEST_CASE("thermal factors") {
    const SystemParams sys{0.5, 3.5, 4};
    const ThermalSpinFactors tf = thermal_factors(Preparation::DownZ, sys, 1.0);
    CHECK(tf.script_a == doctest::Approx(tf.kappa / tf.mu));
    CHECK(tf.f_z == doctest::Approx(-2.0 * std::log(tf.mu)));
    CHECK(tf.log_z_prime == doctest::Approx(4.0 * std::log(tf.mu)));
    CHECK(tf.script_c == doctest::Approx(0.5 * sys.delta_tilde()));
    CHECK(thermal_factors(Preparation::UpZ, sys, 1.0).script_b < 0.0);
    CHECK_THROWS_AS(thermal_factors(Preparation::DownZ, sys, 0.0), DomainError);
}

TEST_CASE("Dicke limit: no drive for z preparations") {
    const BathSpec bath;
    for (Preparation prep : {Preparation::DownZ, Preparation::UpZ}) {
        const SystemParams sys{1.2, 0.0, 5};
        const PrepCoefficients pc = coefficients(prep, sys, bath.beta);
        CHECK(pc.a_coef == 0.0);
        CHECK(pc.d_coef == 0.0);
        for (double t : {0.0, 0.3, 1.1}) CHECK(f_corr(t, prep, sys, bath) == 0.0);
        // and the brute force agrees
        CHECK(std::abs(f_corr_oracle(0.3, prep, sys, bath, 2000, 4)) < 1e-14);
    }
}

TEST_CASE("f_corr is exactly linear in N") {
    const BathSpec bath;
    for (Preparation prep : all_preps) {
        const double one = f_corr(0.4, prep, {0.5, 3.5, 1}, bath);
        for (int n : {2, 7, 1000}) CHECK(f_corr(0.4, prep, {0.5, 3.5, n}, bath) == n * one);
    }
}

TEST_CASE("dephasing value at t = 0") {
    // eps = 0, down_z: f_corr(0) = -N tanh(beta Delta / 2) G omega_c
    for (double beta : {1.0, 0.01, 3.0}) {
        const BathSpec bath{0.05, 5.0, beta};
        const SystemParams sys{0.0, 4.0, 3};
        const double exact = -3.0 * std::tanh(0.5 * beta * 4.0) * 0.05 * 5.0;
        CHECK(f_corr(0.0, Preparation::DownZ, sys, bath) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("closed form against the discretised-bath brute force") {
    const BathSpec bath{0.06, 4.0, 0.8};
    const SystemParams sys{0.7, 2.0, 3};
    const std::vector<double> ts{0.0, 0.5, 1.5};
    for (Preparation prep : all_preps) {
        CAPTURE(to_string(prep));
        const auto ref = f_corr_oracle(ts, prep, sys, bath, 100000, 16);
        double scale = 0.0;
        for (const auto& r : ref) scale = std::max(scale, std::abs(r));
        for (std::size_t k = 0; k < ts.size(); ++k) {
            CAPTURE(ts[k]);
            CHECK(std::abs(ref[k].imag()) < 1e-10 * scale);
            CHECK(std::abs(f_corr(ts[k], prep, sys, bath) - ref[k].real()) < 1e-6 * scale);
        }
    }
}

TEST_CASE("series window joins the exact bracket continuously") {
    const double d = 2.7, beta = 1.0;
    for (double side : {-1.0, 1.0}) {
        const double edge = d * (1.0 + side * series_window);
        const double inside = bracket_kernel(edge * (1.0 - side * 1e-12), d, beta);
        const double outside = bracket_kernel(edge * (1.0 + side * 1e-12), d, beta);
        CHECK(std::abs(inside - outside) < 1e-6 * std::abs(outside));
    }
    // removable singularity: finite at the centre and close to its neighbours
    const double centre = bracket_kernel(d, d, beta);
    CHECK(std::isfinite(centre));
    CHECK(bracket_kernel(d * 1.01, d, beta) == doctest::Approx(centre).epsilon(0.05));
}

TEST_CASE("f_corr is smooth in delta_tilde") {
    QuadraturePolicy tight;
    tight.rel_tol = 1e-12;
    const BathSpec bath;
    const double h = 1e-3;
    auto f = [&](double delta) { return f_corr(0.2, Preparation::DownZ, {0.5, delta, 2}, bath, tight); };
    const double f0 = f(3.5), fp = f(3.5 + h), fm = f(3.5 - h);
    // first differences of order h, second differences of order h^2: no jump from the window
    CHECK(std::abs(fp - f0) < 10.0 * h * std::abs(f0));
    CHECK(std::abs(fp - 2.0 * f0 + fm) < 1e-5 * std::abs(f0));
}

TEST_CASE("plus_x drive is finite and z preparations differ") {
    const BathSpec bath;
    const SystemParams sys{1.5, 2.5, 10};
    const double down = f_corr(0.0, Preparation::DownZ, sys, bath);
    const double up = f_corr(0.0, Preparation::UpZ, sys, bath);
    CHECK(down < 0.0);
    CHECK(std::abs(up - down) > 0.01 * std::abs(down));
    CHECK(std::isfinite(f_corr(0.0, Preparation::PlusX, {1.0, 3.0, 10}, bath)));
}

}
