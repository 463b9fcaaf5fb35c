// trajectory.hpp: recorded observables and diagnostics of one evolution

#pragma once

#include <vector>

#include "spinbath/spin_algebra.hpp"

namespace spinbath {

struct Trajectory {
    std::vector<double> times;
    // 2<J_z>/N, 4<J_z^2>/N^2, 2<J_y>/N, 2<J_x>/N
    std::vector<double> jz, jz2, jy, jx;
    std::vector<double> trace_err, herm_err;
    // Smallest eigenvalue of rho; NaN when dim exceeds min_eig_max_dim.
    std::vector<double> min_eig;

    static constexpr Eigen::Index min_eig_max_dim = 128;

    void record(double t, const Matrix& rho, const SpinOperators& ops);
    /// Record from precomputed observables (rho may live in another basis).
    void record(double t, const NormalizedObservables& obs, const Matrix& rho);

    std::size_t size() const { return times.size(); }
    double max_trace_err() const;
    double max_herm_err() const;
};

}  // namespace spinbath
