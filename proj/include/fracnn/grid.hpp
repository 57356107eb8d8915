#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracnn {

/// Uniform partition of [0, t_end] with nodes t_k = k * h.
///
/// Immutable after construction. The last node is snapped to t_end so the
/// horizon is hit exactly; the snap is a couple of ulp and keeps the grid
/// uniform to machine precision.
class Grid {
public:
    Grid(double t_end, int n_points) : t_end_(t_end), n_points_(n_points) {
        if (!(t_end > 0.0) || !std::isfinite(t_end))
            throw std::invalid_argument("Grid: t_end must be positive and finite");
        if (n_points < 2)
            throw std::invalid_argument("Grid: n_points must be >= 2");
        h_ = t_end / static_cast<double>(n_points - 1);
        nodes_.resize(static_cast<std::size_t>(n_points));
        for (int k = 0; k < n_points; ++k)
            nodes_[static_cast<std::size_t>(k)] = static_cast<double>(k) * h_;
        nodes_.back() = t_end;
    }

    [[nodiscard]] double t_end() const noexcept { return t_end_; }
    [[nodiscard]] int n_points() const noexcept { return n_points_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] double node(int k) const { return nodes_.at(static_cast<std::size_t>(k)); }

    /// Grid with the same horizon and half the step (shared nodes at even indices).
    [[nodiscard]] Grid refined() const { return Grid(t_end_, 2 * (n_points_ - 1) + 1); }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.t_end_ == b.t_end_ && a.n_points_ == b.n_points_;
    }

private:
    double t_end_;
    int n_points_;
    double h_;
    std::vector<double> nodes_;
};

}  // namespace fracnn
