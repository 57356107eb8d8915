#pragma once

// Collocation training loop. The trial solution g(t) = u0 + t * net(x(t))
// satisfies the initial condition by construction; the loss is the l2 norm
// of the discretized-operator residual over the interior grid nodes, and
// its parameter gradient is assembled by exact reverse-mode sweeps through
// the operator, the right-hand side, and the network.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracnn/caputo.hpp"
#include "fracnn/grid.hpp"
#include "fracnn/network.hpp"
#include "fracnn/problem.hpp"

namespace fracnn {

struct TrainConfig {
    int epochs = 20000;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::uint64_t seed = 1;
    /// Feed t / t_end to the network instead of raw t. The trial solution
    /// always multiplies by raw t, so this only rescales the net input.
    bool normalize_input = true;

    void validate() const {
        if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
        if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning rate must be positive");
        if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
            throw std::invalid_argument("TrainConfig: betas must lie in [0, 1)");
        if (!(eps > 0.0)) throw std::invalid_argument("TrainConfig: eps must be positive");
    }
};

namespace detail {

[[nodiscard]] inline std::vector<double> net_inputs(const Grid& grid, bool normalize_input) {
    std::vector<double> x(grid.nodes().begin(), grid.nodes().end());
    if (normalize_input) {
        const double inv = 1.0 / grid.t_end();
        for (double& v : x) v *= inv;
    }
    return x;
}

}  // namespace detail

/// Trial solution g(t_n) = u0 + t_n * net(x_n) at every grid node.
[[nodiscard]] inline std::vector<double> trial_values(const NetworkParams& params, const Grid& grid,
                                                      double u0, bool normalize_input) {
    EvalWorkspace ws;
    const auto x = detail::net_inputs(grid, normalize_input);
    const auto& out = forward_many(params, x, ws);
    std::vector<double> g(out.size());
    for (std::size_t n = 0; n < g.size(); ++n) g[n] = u0 + grid.node(static_cast<int>(n)) * out[n];
    return g;
}

namespace detail {

inline void check_alpha_match(const ProblemSpec& problem, const CaputoWeights& weights,
                              const char* where) {
    if (problem.alpha != weights.alpha())
        throw std::invalid_argument(std::string(where) +
                                    ": operator weights were built for a different alpha");
}

}  // namespace detail

/// Residual norm of arbitrary node samples: sqrt of the sum over interior
/// nodes of (D^alpha samples - rhs(samples, t))^2. Node 0 carries the
/// initial condition and is excluded.
[[nodiscard]] inline double residual_norm(const ProblemSpec& problem,
                                          const CaputoWeights& weights,
                                          std::span<const double> samples) {
    const Grid& grid = weights.grid();
    const auto d = weights.apply(samples);
    double s = 0.0;
    for (int n = 1; n < grid.n_points(); ++n) {
        const double r = d[static_cast<std::size_t>(n)] -
                         problem.rhs(samples[static_cast<std::size_t>(n)], grid.node(n));
        s += r * r;
    }
    return std::sqrt(s);
}

/// Training loss at the given parameters.
[[nodiscard]] inline double loss(const NetworkParams& params, const ProblemSpec& problem,
                                 const CaputoWeights& weights, bool normalize_input) {
    detail::check_alpha_match(problem, weights, "loss");
    const auto g = trial_values(params, weights.grid(), problem.u0, normalize_input);
    return residual_norm(problem, weights, g);
}

/// Loss and its exact gradient with respect to the flattened parameters.
/// When the loss is below 1e-14 the root is non-differentiable and the
/// gradient is reported as zero.
[[nodiscard]] inline std::pair<double, std::vector<double>> loss_gradient(
    const NetworkParams& params, const ProblemSpec& problem, const CaputoWeights& weights,
    bool normalize_input) {
    detail::check_alpha_match(problem, weights, "loss_gradient");
    const Grid& grid = weights.grid();
    const std::size_t n_nodes = static_cast<std::size_t>(grid.n_points());

    EvalWorkspace ws;
    const auto x = detail::net_inputs(grid, normalize_input);
    const auto& out = forward_many(params, x, ws);

    std::vector<double> g(n_nodes);
    for (std::size_t n = 0; n < n_nodes; ++n) g[n] = problem.u0 + grid.node(static_cast<int>(n)) * out[n];

    const auto d = weights.apply(g);
    std::vector<double> r(n_nodes, 0.0);
    double s = 0.0;
    for (std::size_t n = 1; n < n_nodes; ++n) {
        r[n] = d[n] - problem.rhs(g[n], grid.node(static_cast<int>(n)));
        s += r[n] * r[n];
    }
    const double value = std::sqrt(s);
    if (value < 1e-14) return {value, std::vector<double>(params.param_count(), 0.0)};

    // dL/dr = r / L; node 0 stays zero.
    const double inv = 1.0 / value;
    for (double& v : r) v *= inv;

    // Cotangent on g: adjoint of the operator minus the rhs coupling.
    auto q = weights.apply_adjoint(r);
    for (std::size_t n = 1; n < n_nodes; ++n)
        q[n] -= r[n] * problem.rhs_du(g[n], grid.node(static_cast<int>(n)));

    // g = u0 + t * out, so the cotangent on the network output is q * t.
    std::vector<double> c(n_nodes);
    for (std::size_t n = 0; n < n_nodes; ++n) c[n] = q[n] * grid.node(static_cast<int>(n));

    return {value, backward_many(params, c, ws)};
}

/// First-moment / second-moment state for the optimizer, sized lazily on
/// the first step.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long step = 0;
};

/// One Adam update with bias correction, in place on theta.
inline void adam_step(std::span<double> theta, std::span<const double> grad, AdamState& state,
                      const TrainConfig& config) {
    if (theta.size() != grad.size())
        throw std::invalid_argument("adam_step: theta and gradient sizes differ");
    if (state.m.empty()) {
        state.m.assign(theta.size(), 0.0);
        state.v.assign(theta.size(), 0.0);
    }
    if (state.m.size() != theta.size())
        throw std::invalid_argument("adam_step: state size does not match theta");
    state.step += 1;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        theta[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.eps);
    }
}

struct TrainResult {
    NetworkParams params;
    /// Loss evaluated before each update; loss_history[0] is the loss at
    /// the freshly initialized parameters.
    std::vector<double> loss_history;
    /// Loss at the returned (post-training) parameters.
    double final_loss = 0.0;
};

/// Full-batch training run. Deterministic for a fixed seed and config.
[[nodiscard]] inline TrainResult train(const ProblemSpec& problem, const Grid& grid,
                                       const LayerSpec& spec, const TrainConfig& config) {
    config.validate();
    const CaputoWeights weights(problem.alpha, grid);

    TrainResult result;
    result.params = init_params(spec, config.seed);
    std::vector<double> theta = result.params.flatten();
    AdamState state;
    result.loss_history.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        auto [value, grad] =
            loss_gradient(result.params, problem, weights, config.normalize_input);
        if (!std::isfinite(value))
            throw std::runtime_error("train: loss diverged at epoch " + std::to_string(epoch));
        result.loss_history.push_back(value);
        adam_step(theta, grad, state, config);
        result.params.assign_flat(theta);
    }
    result.final_loss = loss(result.params, problem, weights, config.normalize_input);
    return result;
}

}  // namespace fracnn
