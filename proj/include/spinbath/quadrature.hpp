// quadrature.hpp: adaptive Gauss-Kronrod (10/21 point) integration for real or complex integrands

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath {

struct QuadraturePolicy {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    std::size_t max_subdivisions{4000};
    // Semi-infinite spectral integrals are truncated at this multiple of omega_c.
    double tail_cutoff_multiplier{40.0};
    // Uniform panels per interval between singular points before adaptation starts.
    std::size_t initial_panels{16};
};

template <typename Value>
struct QuadResult {
    Value value{};
    double error{0.0};
    std::size_t evaluations{0};
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// QUADPACK qk21 abscissae (positive half, descending) and weights.
inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208548428160, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
inline constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename Value>
struct Panel {
    double a;
    double b;
    Value value;
    double error;
};

template <typename Value, typename F>
Panel<Value> gk21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Value fc = f(center);
    Value kronrod = fc * kWgk[10];
    Value gauss{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const Value sum = f(center - dx) + f(center + dx);
        kronrod += sum * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive GK21 quadrature of `f` over [a, b].
///
/// Panels are first split at every entry of `breakpoints` that lies strictly
/// inside (a, b), so integrable kinks and removable singularities never sit in a
/// panel interior. The panel with the largest error estimate is bisected until
/// the summed estimate meets max(abs_tol, rel_tol * |value|). Final summation
/// runs over panels in ascending position, so the result does not depend on
/// the refinement order.
template <typename Value, typename F>
QuadResult<Value> integrate(F&& f, double a, double b, const QuadraturePolicy& policy,
                            std::vector<double> breakpoints = {}) {
    using Panel = detail::Panel<Value>;
    QuadResult<Value> out;
    if (a == b) return out;
    const bool flipped = b < a;
    if (flipped) std::swap(a, b);

    std::vector<double> edges{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double p : breakpoints)
        if (p > a && p < b && p > edges.back()) edges.push_back(p);
    edges.push_back(b);

    auto by_error = [](const Panel& x, const Panel& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(by_error)> queue(by_error);

    const std::size_t per_interval = std::max<std::size_t>(1, policy.initial_panels);
    Value total{};
    double total_err = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double width = (edges[e + 1] - edges[e]) / static_cast<double>(per_interval);
        for (std::size_t k = 0; k < per_interval; ++k) {
            const double lo = edges[e] + width * static_cast<double>(k);
            const double hi = (k + 1 == per_interval) ? edges[e + 1] : lo + width;
            Panel p = detail::gk21<Value>(f, lo, hi);
            out.evaluations += 21;
            total += p.value;
            total_err += p.error;
            queue.push(p);
        }
    }

    std::size_t subdivisions = 0;
    auto converged = [&] {
        return total_err <= std::max(policy.abs_tol, policy.rel_tol * detail::magnitude(total));
    };
    while (!converged()) {
        if (subdivisions >= policy.max_subdivisions) {
            throw IntegrationError("adaptive quadrature did not converge within " +
                                       std::to_string(policy.max_subdivisions) + " subdivisions",
                                   detail::magnitude(total), total_err);
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw IntegrationError("adaptive quadrature reached machine resolution",
                                   detail::magnitude(total), total_err);
        }
        Panel left = detail::gk21<Value>(f, worst.a, mid);
        Panel right = detail::gk21<Value>(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }

    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Value sum{};
    double err = 0.0;
    for (const Panel& p : panels) {
        sum += p.value;
        err += p.error;
    }
    out.value = flipped ? Value(-sum) : sum;
    out.error = err;
    return out;
}

}  // namespace spinbath
