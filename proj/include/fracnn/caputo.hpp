#pragma once

// L1 discretization of the Caputo derivative of order alpha in (0, 1] on a
// uniform grid:
//
//   D^a x(t_n) ~= 1/(h^a Gamma(2-a)) * sum_{k=0}^{n-1} (x_{k+1} - x_k) * D_{n,k}
//   D_{n,k} = (n-k)^{1-a} - (n-k-1)^{1-a}
//
// The weights depend only on the lag n-k, so the triangular table collapses
// to one row per lag. delta(n, k) still exposes the full table view.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracnn/grid.hpp"
#include "fracnn/special_functions.hpp"

namespace fracnn {

/// Precomputed L1 weights for one (alpha, grid) pair.
///
/// Immutable after construction; apply/apply_adjoint are pure and safe to
/// call concurrently on shared weights.
class CaputoWeights {
public:
    CaputoWeights(double alpha, Grid grid) : alpha_(alpha), grid_(std::move(grid)) {
        if (!(alpha > 0.0) || alpha > 1.0 || !std::isfinite(alpha))
            throw std::domain_error("CaputoWeights: alpha must lie in (0, 1]");
        const double om = 1.0 - alpha;
        const int n = grid_.n_points();
        lag_.resize(static_cast<std::size_t>(n), 0.0);
        // Lag 1 is (1)^om - (0)^om with the 0^0 := 0 convention at alpha = 1,
        // which makes the weight exactly 1 for every alpha and reduces the
        // operator to the backward difference in the alpha -> 1 limit.
        if (n > 1) lag_[1] = 1.0;
        for (int j = 2; j < n; ++j)
            lag_[static_cast<std::size_t>(j)] =
                std::pow(static_cast<double>(j), om) - std::pow(static_cast<double>(j - 1), om);
        scale_ = 1.0 / (std::pow(grid_.h(), alpha) * fracnn::gamma(2.0 - alpha));
    }

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

    /// Weight attached to the k-th backward difference when evaluating at node n.
    [[nodiscard]] double delta(int n, int k) const {
        if (n < 1 || n >= grid_.n_points() || k < 0 || k >= n)
            throw std::out_of_range("CaputoWeights::delta: need 1 <= n < n_points, 0 <= k < n");
        return lag_[static_cast<std::size_t>(n - k)];
    }

    /// Discrete Caputo derivative of the sampled function.
    ///
    /// d[0] is 0 by convention (empty sum); callers must not treat it as an
    /// operator value.
    [[nodiscard]] std::vector<double> apply(std::span<const double> samples) const {
        const int n_pts = grid_.n_points();
        if (static_cast<int>(samples.size()) != n_pts)
            throw std::invalid_argument("CaputoWeights::apply: samples length != grid.n_points");
        std::vector<double> diff(static_cast<std::size_t>(n_pts - 1));
        for (int k = 0; k + 1 < n_pts; ++k)
            diff[static_cast<std::size_t>(k)] = samples[static_cast<std::size_t>(k + 1)] -
                                                samples[static_cast<std::size_t>(k)];
        std::vector<double> out(static_cast<std::size_t>(n_pts), 0.0);
        for (int n = 1; n < n_pts; ++n) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += diff[static_cast<std::size_t>(k)] * lag_[static_cast<std::size_t>(n - k)];
            out[static_cast<std::size_t>(n)] = scale_ * acc;
        }
        return out;
    }

    /// Adjoint of apply viewed as a linear map on the sample vector:
    /// returns q with q[m] = sum_n v[n] * d(apply)[n]/d(samples[m]).
    /// v[0] is ignored, matching the unused node-0 output.
    [[nodiscard]] std::vector<double> apply_adjoint(std::span<const double> v) const {
        const int n_pts = grid_.n_points();
        if (static_cast<int>(v.size()) != n_pts)
            throw std::invalid_argument("CaputoWeights::apply_adjoint: length != grid.n_points");
        std::vector<double> q(static_cast<std::size_t>(n_pts), 0.0);
        for (int n = 1; n < n_pts; ++n) {
            const double w = scale_ * v[static_cast<std::size_t>(n)];
            if (w == 0.0) continue;
            for (int k = 0; k < n; ++k) {
                const double c = w * lag_[static_cast<std::size_t>(n - k)];
                q[static_cast<std::size_t>(k + 1)] += c;
                q[static_cast<std::size_t>(k)] -= c;
            }
        }
        return q;
    }

private:
    double alpha_;
    Grid grid_;
    double scale_;
    std::vector<double> lag_;  // lag_[j] = j^{1-a} - (j-1)^{1-a}
};

/// Named constructor matching the operator vocabulary used elsewhere.
[[nodiscard]] inline CaputoWeights build_weights(double alpha, const Grid& grid) {
    return CaputoWeights(alpha, grid);
}

}  // namespace fracnn
