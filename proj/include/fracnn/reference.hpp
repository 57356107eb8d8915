#pragma once

// Step-by-step reference solver built on the same discretized operator the
// trainer uses. At each node the operator equation is solved for the newest
// value, either with the right-hand side lagged one node (explicit) or by
// fixed-point iteration on the current node (implicit). Used to validate
// trained solutions for problems without a closed form.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracnn/caputo.hpp"
#include "fracnn/grid.hpp"
#include "fracnn/problem.hpp"

namespace fracnn {

enum class Scheme { l1_explicit, l1_implicit };

struct OracleConfig {
    Scheme scheme = Scheme::l1_implicit;
    double fixed_point_tol = 1e-12;
    int max_iterations = 100;

    void validate() const {
        if (!(fixed_point_tol > 0.0))
            throw std::invalid_argument("OracleConfig: tolerance must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("OracleConfig: need at least one iteration");
    }
};

/// March the problem across the grid. The newest node satisfies
///   u[n] = u[n-1] + rhs(u*, t_n) / scale - (history sum),
/// with u* = u[n-1] (explicit) or u* = u[n] via fixed point (implicit).
[[nodiscard]] inline std::vector<double> solve(const ProblemSpec& problem, const Grid& grid,
                                               const OracleConfig& config = {}) {
    config.validate();
    const CaputoWeights weights(problem.alpha, grid);
    const double inv_scale = 1.0 / weights.scale();

    std::vector<double> u(static_cast<std::size_t>(grid.n_points()));
    u[0] = problem.u0;
    for (int n = 1; n < grid.n_points(); ++n) {
        double history = 0.0;
        for (int k = 0; k <= n - 2; ++k)
            history += (u[static_cast<std::size_t>(k + 1)] - u[static_cast<std::size_t>(k)]) *
                       weights.delta(n, k);
        const double base = u[static_cast<std::size_t>(n - 1)] - history;
        const double t = grid.node(n);

        double value;
        if (config.scheme == Scheme::l1_explicit) {
            value = base + problem.rhs(u[static_cast<std::size_t>(n - 1)], t) * inv_scale;
        } else {
            double cur = u[static_cast<std::size_t>(n - 1)];
            bool converged = false;
            for (int it = 0; it < config.max_iterations; ++it) {
                const double next = base + problem.rhs(cur, t) * inv_scale;
                if (std::abs(next - cur) <= config.fixed_point_tol * (1.0 + std::abs(next))) {
                    cur = next;
                    converged = true;
                    break;
                }
                cur = next;
            }
            if (!converged)
                throw std::runtime_error("solve: fixed point failed to converge at node " +
                                         std::to_string(n));
            value = cur;
        }
        u[static_cast<std::size_t>(n)] = value;
    }
    return u;
}

/// Gap between the marched solution on a grid and on its once-refined
/// version, compared at the shared (coarse) nodes. Small gaps certify the
/// reference solution before it is used as a benchmark.
struct ConvergenceGap {
    double max_abs = 0.0;
    double rms = 0.0;
};

[[nodiscard]] inline ConvergenceGap self_convergence_gap(const ProblemSpec& problem,
                                                         const Grid& coarse,
                                                         const OracleConfig& config = {}) {
    const Grid fine = coarse.refined();
    const auto uc = solve(problem, coarse, config);
    const auto uf = solve(problem, fine, config);
    ConvergenceGap gap;
    double s = 0.0;
    for (int k = 0; k < coarse.n_points(); ++k) {
        const double d = uc[static_cast<std::size_t>(k)] - uf[static_cast<std::size_t>(2 * k)];
        gap.max_abs = std::max(gap.max_abs, std::abs(d));
        s += d * d;
    }
    gap.rms = std::sqrt(s / static_cast<double>(coarse.n_points()));
    return gap;
}

}  // namespace fracnn
