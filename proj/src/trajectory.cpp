#include "spinbath/trajectory.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

namespace spinbath {

void Trajectory::record(double t, const Matrix& rho, const SpinOperators& ops) {
    record(t, normalized_observables(rho, ops), rho);
}

void Trajectory::record(double t, const NormalizedObservables& obs, const Matrix& rho) {
    times.push_back(t);
    jz.push_back(obs.jz);
    jz2.push_back(obs.jz2);
    jy.push_back(obs.jy);
    jx.push_back(obs.jx);
    trace_err.push_back(trace_error(rho));
    herm_err.push_back(hermiticity_error(rho));
    if (rho.rows() <= min_eig_max_dim) {
        const Matrix sym = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
        min_eig.push_back(solver.eigenvalues().minCoeff());
    } else {
        min_eig.push_back(std::numeric_limits<double>::quiet_NaN());
    }
}

double Trajectory::max_trace_err() const {
    return trace_err.empty() ? 0.0 : *std::max_element(trace_err.begin(), trace_err.end());
}

double Trajectory::max_herm_err() const {
    return herm_err.empty() ? 0.0 : *std::max_element(herm_err.begin(), herm_err.end());
}

}  // namespace spinbath
