#pragma once

// Scalar-in / scalar-out dense feedforward network with hand-written
// reverse-mode gradients. No framework: the widths are small and the grids
// desk-scale, so plain contiguous loops are fast enough and keep training
// bit-reproducible (fixed layer-major, node-ascending accumulation order).

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracnn/grid.hpp"

namespace fracnn {

enum class Activation { sigmoid, tanh, identity };

[[nodiscard]] inline const char* to_string(Activation a) {
    switch (a) {
        case Activation::sigmoid: return "sigmoid";
        case Activation::tanh: return "tanh";
        case Activation::identity: return "identity";
    }
    throw std::invalid_argument("unknown activation");
}

[[nodiscard]] inline Activation activation_from_string(const std::string& s) {
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "tanh") return Activation::tanh;
    if (s == "identity") return Activation::identity;
    throw std::invalid_argument("unknown activation: " + s);
}

/// Layer widths, input to output. First and last must be 1; the entries in
/// between are hidden-layer widths. The activation applies to every hidden
/// layer; the output layer is affine.
struct LayerSpec {
    std::vector<int> widths;
    Activation activation = Activation::sigmoid;

    void validate() const {
        if (widths.size() < 3)
            throw std::invalid_argument("LayerSpec: need at least one hidden layer");
        if (widths.front() != 1 || widths.back() != 1)
            throw std::invalid_argument("LayerSpec: input and output widths must be 1");
        for (int w : widths)
            if (w < 1) throw std::invalid_argument("LayerSpec: widths must be positive");
    }

    [[nodiscard]] std::size_t param_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i + 1 < widths.size(); ++i)
            n += static_cast<std::size_t>(widths[i]) * static_cast<std::size_t>(widths[i + 1]) +
                 static_cast<std::size_t>(widths[i + 1]);
        return n;
    }

    [[nodiscard]] std::size_t n_layers() const { return widths.size() - 1; }
};

/// All weights and biases of a network. w is row-major (out x in):
/// w[i*in + j] connects input j to unit i.
struct NetworkParams {
    struct Layer {
        int in = 0;
        int out = 0;
        std::vector<double> w;
        std::vector<double> b;
    };

    LayerSpec spec;
    std::vector<Layer> layers;

    [[nodiscard]] std::size_t param_count() const { return spec.param_count(); }

    /// Layer-major flattening: per layer all weights (row-major), then biases.
    [[nodiscard]] std::vector<double> flatten() const {
        std::vector<double> theta;
        theta.reserve(param_count());
        for (const auto& l : layers) {
            theta.insert(theta.end(), l.w.begin(), l.w.end());
            theta.insert(theta.end(), l.b.begin(), l.b.end());
        }
        return theta;
    }

    /// Inverse of flatten into this object's existing shape.
    void assign_flat(std::span<const double> theta) {
        if (theta.size() != param_count())
            throw std::invalid_argument("NetworkParams::assign_flat: size mismatch");
        std::size_t o = 0;
        for (auto& l : layers) {
            for (double& x : l.w) x = theta[o++];
            for (double& x : l.b) x = theta[o++];
        }
    }
};

[[nodiscard]] inline NetworkParams unflatten(const LayerSpec& spec, std::span<const double> theta) {
    spec.validate();
    NetworkParams p;
    p.spec = spec;
    p.layers.resize(spec.n_layers());
    for (std::size_t i = 0; i < spec.n_layers(); ++i) {
        auto& l = p.layers[i];
        l.in = spec.widths[i];
        l.out = spec.widths[i + 1];
        l.w.resize(static_cast<std::size_t>(l.in) * static_cast<std::size_t>(l.out));
        l.b.resize(static_cast<std::size_t>(l.out));
    }
    p.assign_flat(theta);
    return p;
}

/// Glorot-uniform initialization: weights uniform on
/// [-sqrt(6/(fan_in+fan_out)), +...], biases zero. The draw consumes raw
/// mt19937_64 output directly, so the same seed gives bit-identical
/// parameters on every platform.
[[nodiscard]] inline NetworkParams init_params(const LayerSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        // 53 uniform bits in [0, 1)
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    NetworkParams p;
    p.spec = spec;
    p.layers.resize(spec.n_layers());
    for (std::size_t i = 0; i < spec.n_layers(); ++i) {
        auto& l = p.layers[i];
        l.in = spec.widths[i];
        l.out = spec.widths[i + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
        l.w.resize(static_cast<std::size_t>(l.in) * static_cast<std::size_t>(l.out));
        for (double& w : l.w) w = bound * (2.0 * unit() - 1.0);
        l.b.assign(static_cast<std::size_t>(l.out), 0.0);
    }
    return p;
}

namespace detail {

inline double activate(Activation a, double y) {
    switch (a) {
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-y));
        case Activation::tanh: return std::tanh(y);
        case Activation::identity: return y;
    }
    return y;
}

// Derivative expressed through the post-activation value.
inline double activate_deriv_from_value(Activation a, double z) {
    switch (a) {
        case Activation::sigmoid: return z * (1.0 - z);
        case Activation::tanh: return 1.0 - z * z;
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

}  // namespace detail

/// Reusable per-layer activation and delta buffers for batched evaluation.
/// One forward_many fill is consumed by the matching backward_many call.
struct EvalWorkspace {
    std::vector<std::vector<double>> acts;   // acts[l]: n_inputs x widths[l], node-major
    std::vector<std::vector<double>> delta;  // scratch for backward
};

/// Batched forward pass over arbitrary scalar inputs; returns the outputs
/// (one per input) and leaves all intermediate activations in ws.
inline const std::vector<double>& forward_many(const NetworkParams& params,
                                               std::span<const double> inputs,
                                               EvalWorkspace& ws) {
    const std::size_t n = inputs.size();
    const std::size_t n_layers = params.layers.size();
    ws.acts.resize(n_layers + 1);
    ws.acts[0].assign(inputs.begin(), inputs.end());
    for (std::size_t l = 0; l < n_layers; ++l) {
        const auto& layer = params.layers[l];
        const std::size_t in = static_cast<std::size_t>(layer.in);
        const std::size_t out = static_cast<std::size_t>(layer.out);
        const bool hidden = l + 1 < n_layers;
        const std::vector<double>& prev = ws.acts[l];
        std::vector<double>& cur = ws.acts[l + 1];
        cur.resize(n * out);
        for (std::size_t node = 0; node < n; ++node) {
            const double* a = prev.data() + node * in;
            double* z = cur.data() + node * out;
            for (std::size_t i = 0; i < out; ++i) {
                const double* wrow = layer.w.data() + i * in;
                double y = layer.b[i];
                for (std::size_t j = 0; j < in; ++j) y += wrow[j] * a[j];
                z[i] = hidden ? detail::activate(params.spec.activation, y) : y;
            }
        }
    }
    return ws.acts.back();
}

/// Scalar forward pass.
[[nodiscard]] inline double forward(const NetworkParams& params, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("forward: input must be finite");
    EvalWorkspace ws;
    const double in[1] = {x};
    return forward_many(params, in, ws)[0];
}

/// Elementwise forward over the grid nodes; identical to calling forward
/// per node.
[[nodiscard]] inline std::vector<double> forward_batch(const NetworkParams& params,
                                                       const Grid& grid) {
    EvalWorkspace ws;
    return forward_many(params, grid.nodes(), ws);
}

/// Gradient of sum_n cotangents[n] * output_n with respect to the flattened
/// parameter vector, reusing the activations stored by the matching
/// forward_many call. Accumulation order is layer-major, node-ascending.
[[nodiscard]] inline std::vector<double> backward_many(const NetworkParams& params,
                                                       std::span<const double> cotangents,
                                                       EvalWorkspace& ws) {
    const std::size_t n_layers = params.layers.size();
    if (ws.acts.size() != n_layers + 1 || ws.acts[0].size() != cotangents.size())
        throw std::invalid_argument("backward_many: workspace does not match forward pass");
    const std::size_t n = cotangents.size();

    std::vector<double> grad(params.param_count(), 0.0);
    // Flat offsets of each layer's weight block, in flatten() order.
    std::vector<std::size_t> offset(n_layers);
    {
        std::size_t o = 0;
        for (std::size_t l = 0; l < n_layers; ++l) {
            offset[l] = o;
            o += params.layers[l].w.size() + params.layers[l].b.size();
        }
    }

    ws.delta.resize(n_layers + 1);
    ws.delta[n_layers].assign(cotangents.begin(), cotangents.end());
    for (std::size_t l = n_layers; l-- > 0;) {
        const auto& layer = params.layers[l];
        const std::size_t in = static_cast<std::size_t>(layer.in);
        const std::size_t out = static_cast<std::size_t>(layer.out);
        const std::vector<double>& a_prev = ws.acts[l];
        const std::vector<double>& d_cur = ws.delta[l + 1];
        double* gw = grad.data() + offset[l];
        double* gb = gw + layer.w.size();
        for (std::size_t node = 0; node < n; ++node) {
            const double* a = a_prev.data() + node * in;
            const double* d = d_cur.data() + node * out;
            for (std::size_t i = 0; i < out; ++i) {
                const double di = d[i];
                gb[i] += di;
                double* gwrow = gw + i * in;
                for (std::size_t j = 0; j < in; ++j) gwrow[j] += di * a[j];
            }
        }
        if (l == 0) break;  // acts[0] is the raw input, nothing upstream
        std::vector<double>& d_prev = ws.delta[l];
        d_prev.assign(n * in, 0.0);
        for (std::size_t node = 0; node < n; ++node) {
            const double* d = d_cur.data() + node * out;
            const double* a = a_prev.data() + node * in;
            double* dp = d_prev.data() + node * in;
            for (std::size_t i = 0; i < out; ++i) {
                const double di = d[i];
                const double* wrow = layer.w.data() + i * in;
                for (std::size_t j = 0; j < in; ++j) dp[j] += di * wrow[j];
            }
            for (std::size_t j = 0; j < in; ++j)
                dp[j] *= detail::activate_deriv_from_value(params.spec.activation, a[j]);
        }
    }
    return grad;
}

/// Parameter gradient of sum_n cotangent[n] * forward(params, t_n) over the
/// grid nodes.
[[nodiscard]] inline std::vector<double> backward(const NetworkParams& params, const Grid& grid,
                                                  std::span<const double> output_cotangent) {
    if (static_cast<int>(output_cotangent.size()) != grid.n_points())
        throw std::invalid_argument("backward: cotangent length != grid.n_points");
    EvalWorkspace ws;
    forward_many(params, grid.nodes(), ws);
    return backward_many(params, output_cotangent, ws);
}

}  // namespace fracnn
