#include "spinbath/master_equation.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "spinbath/errors.hpp"
#include "spinbath/rk4.hpp"

namespace spinbath {

namespace {

std::size_t step_count(const SimConfig& c) {
    return static_cast<std::size_t>(std::ceil(c.t_max / c.dt - 1e-9));
}

std::size_t node_count(const SimConfig& c) {
    const double end = static_cast<double>(step_count(c)) * c.dt;
    return static_cast<std::size_t>(std::ceil(end / c.kernel_grid_dt - 1e-9)) + 1;
}

// Locates t on a grid; returns (node, weight of node + 1).
std::pair<std::size_t, double> locate(double t, double grid_dt, std::size_t nodes) {
    const double end = grid_dt * static_cast<double>(nodes - 1);
    if (!(t >= -1e-12 * grid_dt) || t > end + 1e-9 * grid_dt)
        throw RangeError("time " + std::to_string(t) + " outside precomputed grid [0, " + std::to_string(end) + "]");
    const double x = std::max(t, 0.0) / grid_dt;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 1e-9) return {std::min<std::size_t>(static_cast<std::size_t>(nearest), nodes - 1), 0.0};
    const auto n = static_cast<std::size_t>(std::floor(x));
    return {n, x - static_cast<double>(n)};
}

}  // namespace

SimConfig SimConfig::resolved(const SystemParams& sys) const {
    SimConfig out = *this;
    if (out.dt <= 0.0) {
        const double dt_tilde = sys.delta_tilde();
        if (!(dt_tilde > 0.0)) throw DegenerateHamiltonianError("SimConfig: default dt needs delta_tilde > 0");
        // snapped so that a whole number of steps ends on t_max
        const double nominal = 1e-3 * 2.0 * std::numbers::pi / dt_tilde;
        out.dt = out.t_max > 0.0 ? out.t_max / std::ceil(out.t_max / nominal) : nominal;
    }
    if (out.kernel_grid_dt <= 0.0) out.kernel_grid_dt = 0.5 * out.dt;
    return out;
}

void SimConfig::validate() const {
    if (!(t_max > 0.0)) throw DomainError("SimConfig: t_max must be > 0");
    if (!(dt > 0.0)) throw DomainError("SimConfig: dt must be > 0");
    if (!(kernel_grid_dt > 0.0) || kernel_grid_dt > dt * (1.0 + 1e-12))
        throw DomainError("SimConfig: kernel_grid_dt must be in (0, dt]");
    if (record_every < 1) throw DomainError("SimConfig: record_every must be >= 1");
}

Matrix MemoryKernel::at(double t) const {
    const auto [n, w] = locate(t, grid_dt, lambda.size());
    if (w == 0.0) return lambda[n];
    return (1.0 - w) * lambda[n] + w * lambda[n + 1];
}

double CorrelationDrive::at(double t) const {
    const auto [n, w] = locate(t, grid_dt, values.size());
    if (w == 0.0) return values[n];
    return (1.0 - w) * values[n] + w * values[n + 1];
}

MemoryKernel build_memory_kernel(const SystemParams& sys, const BathSpec& bath, const SimConfig& config_in) {
    const SimConfig config = config_in.resolved(sys);
    config.validate();
    bath.validate();
    const SpinOperators ops = build_spin_operators(sys.n_atoms);
    const EigenSystem eig = diagonalize_hs(sys, ops);
    const Matrix fe = eig.vectors.adjoint() * ops.jx * eig.vectors;
    const double dt_tilde = sys.delta_tilde();
    const double scale = fe.cwiseAbs().maxCoeff();

    // Group the non-zero eigenbasis elements of F by transition frequency E_a - E_b.
    std::map<long, std::vector<std::pair<Eigen::Index, Eigen::Index>>> groups;
    for (Eigen::Index b = 0; b < fe.cols(); ++b)
        for (Eigen::Index a = 0; a < fe.rows(); ++a)
            if (std::abs(fe(a, b)) > 1e-13 * scale)
                groups[std::lround((eig.energies(a) - eig.energies(b)) / dt_tilde)].emplace_back(a, b);

    MemoryKernel kernel;
    kernel.grid_dt = config.kernel_grid_dt;
    const std::size_t nodes = node_count(config);
    kernel.lambda.reserve(nodes);
    const Eigen::Index d = ops.dim;
    for (std::size_t n = 0; n < nodes; ++n) {
        const double t = kernel.grid_dt * static_cast<double>(n);
        Matrix le = Matrix::Zero(d, d);
        if (n > 0 && bath.g != 0.0) {
            for (const auto& [k, elems] : groups) {
                const cplx transform = correlation_transform(dt_tilde * static_cast<double>(k), t, bath, config.quadrature);
                for (const auto& [a, b] : elems) le(a, b) = fe(a, b) * transform;
            }
        }
        kernel.lambda.push_back(eig.vectors * le * eig.vectors.adjoint());
    }
    return kernel;
}

CorrelationDrive build_correlation_drive(Preparation prep, const SystemParams& sys, const BathSpec& bath,
                                         const SimConfig& config_in) {
    const SimConfig config = config_in.resolved(sys);
    config.validate();
    CorrelationDrive drive;
    drive.grid_dt = config.kernel_grid_dt;
    const std::size_t nodes = node_count(config);
    drive.values.reserve(nodes);
    for (std::size_t n = 0; n < nodes; ++n)
        drive.values.push_back(f_corr(drive.grid_dt * static_cast<double>(n), prep, sys, bath, config.quadrature));
    return drive;
}

MasterEquation make_master_equation(const SystemParams& sys, std::shared_ptr<const MemoryKernel> kernel,
                                    std::shared_ptr<const CorrelationDrive> drive) {
    MasterEquation me;
    me.ops = build_spin_operators(sys.n_atoms);
    me.hs = system_hamiltonian(sys, me.ops);
    me.coupling = me.ops.jx;
    me.kernel = std::move(kernel);
    me.drive = std::move(drive);
    return me;
}

Matrix rhs(double t, const Matrix& rho, const MasterEquation& me) {
    const cplx i(0.0, 1.0);
    const Matrix& f = me.coupling;
    Matrix out = i * (rho * me.hs - me.hs * rho);
    if (me.drive) {
        const double fc = me.drive->at(t);
        if (fc != 0.0) out += (-i * fc) * (rho * f - f * rho);
    }
    const Matrix lr = me.kernel->at(t) * rho;
    const Matrix diss = lr * f - f * lr;
    out += diss + diss.adjoint();

    const double scale = 1.0 + out.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * scale * static_cast<double>(out.rows());
    if (std::abs(out.trace()) > tol || hermiticity_error(out) > tol)
        throw NumericalConsistencyError("rhs: derivative not traceless/Hermitian at t = " + std::to_string(t));
    return out;
}

Trajectory evolve(const Matrix& rho0, const MasterEquation& me, const SimConfig& config) {
    config.validate();
    const std::size_t steps = step_count(config);
    auto f = [&me](double t, const Matrix& rho) { return rhs(t, rho, me); };

    Trajectory traj;
    Matrix rho = rho0;
    traj.record(0.0, rho, me.ops);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * config.dt;
        rho = rk4_step(f, t, rho, config.dt);
        const double t_next = static_cast<double>(s + 1) * config.dt;
        const double terr = trace_error(rho), herr = hermiticity_error(rho);
        if (terr > max_invariant_error || herr > max_invariant_error)
            throw FailedRunError("evolve: trace error " + std::to_string(terr) + ", hermiticity error " +
                                     std::to_string(herr) + " at t = " + std::to_string(t_next),
                                 t_next);
        if ((s + 1) % static_cast<std::size_t>(config.record_every) == 0 || s + 1 == steps)
            traj.record(t_next, rho, me.ops);
    }
    return traj;
}

Trajectory evolve(const Matrix& rho0, const SystemParams& sys, const BathSpec& bath, Preparation prep,
                  const SimConfig& config_in) {
    const SimConfig config = config_in.resolved(sys);
    auto kernel = std::make_shared<const MemoryKernel>(build_memory_kernel(sys, bath, config));
    std::shared_ptr<const CorrelationDrive> drive;
    if (config.include_correlations)
        drive = std::make_shared<const CorrelationDrive>(build_correlation_drive(prep, sys, bath, config));
    return evolve(rho0, make_master_equation(sys, kernel, drive), config);
}

}  // namespace spinbath
