// master_equation.hpp: second-order time-local master equation with the
// preparation-induced drive term
//
//   d rho/dt = i[rho, H_S] - i f_corr(t) [rho, F] + { [Lambda(t) rho, F] + h.c. },
//   Lambda(t) = int_0^t C(tau) F(tau) d tau,  F(tau) = e^{-i H_S tau} F e^{i H_S tau},
//
// with F = J_x. Setting include_correlations = false drops the f_corr term and
// gives the equation for a factorised initial state.

#pragma once

#include <memory>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/corr_kernel.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/spin_algebra.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

struct SimConfig {
    double t_max{2.0};
    double dt{0.0};  // 0: about 1e-3 * 2 pi / delta_tilde, adjusted to divide t_max
    bool include_correlations{true};
    double kernel_grid_dt{0.0};  // 0: dt / 2, which puts every RK4 stage on a grid node
    int record_every{1};
    QuadraturePolicy quadrature{};

    /// Copy with defaults filled in for the given system.
    SimConfig resolved(const SystemParams& sys) const;
    void validate() const;
};

/// Lambda(t) tabulated on a uniform grid t_n = n * grid_dt.
struct MemoryKernel {
    double grid_dt{0.0};
    std::vector<Matrix> lambda;

    double t_end() const { return grid_dt * static_cast<double>(lambda.size() - 1); }
    /// Linear interpolation between nodes; throws RangeError outside [0, t_end].
    Matrix at(double t) const;
};

/// f_corr(t) memoised on the kernel grid.
struct CorrelationDrive {
    double grid_dt{0.0};
    std::vector<double> values;

    double t_end() const { return grid_dt * static_cast<double>(values.size() - 1); }
    double at(double t) const;
};

/// Each grid node is computed independently, so results do not depend on
/// evaluation order. Lambda is assembled in the H_S eigenbasis where
/// F(tau)_{ab} = F_{ab} exp(-i (E_a - E_b) tau), so every matrix element needs
/// only the scalar transform int_0^t C(tau) exp(-i nu tau) d tau.
MemoryKernel build_memory_kernel(const SystemParams& sys, const BathSpec& bath, const SimConfig& config);

CorrelationDrive build_correlation_drive(Preparation prep, const SystemParams& sys, const BathSpec& bath,
                                         const SimConfig& config);

/// Immutable right-hand-side context; shareable between concurrent evolutions.
struct MasterEquation {
    SpinOperators ops;
    Matrix hs;
    Matrix coupling;  // F = J_x
    std::shared_ptr<const MemoryKernel> kernel;
    std::shared_ptr<const CorrelationDrive> drive;  // null: uncorrelated equation
};

MasterEquation make_master_equation(const SystemParams& sys, std::shared_ptr<const MemoryKernel> kernel,
                                    std::shared_ptr<const CorrelationDrive> drive);

/// d rho / dt at time t. Throws RangeError beyond the tabulated grid and
/// NumericalConsistencyError if the result is not traceless and Hermitian.
Matrix rhs(double t, const Matrix& rho, const MasterEquation& me);

/// Fixed-step RK4 from rho0 to config.t_max, recording every record_every steps
/// (and the final step). Throws FailedRunError if trace or hermiticity drift
/// beyond max_invariant_error.
Trajectory evolve(const Matrix& rho0, const MasterEquation& me, const SimConfig& config);

/// Convenience: builds kernel and drive, then evolves.
Trajectory evolve(const Matrix& rho0, const SystemParams& sys, const BathSpec& bath, Preparation prep,
                  const SimConfig& config);

inline constexpr double max_invariant_error = 1e-8;

}  // namespace spinbath
