#pragma once

// Artifact persistence: weight files as JSON, solution traces and loss
// histories as CSV. Floats are written with 17 significant digits so a
// round-trip through text reproduces the double exactly.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracnn/network.hpp"

namespace fracnn {

namespace detail {

[[nodiscard]] inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// One solution-trace row per grid node. has_reference toggles whether the
/// u_ref and abs_err columns carry values or stay blank.
struct SolutionTrace {
    std::vector<double> t;
    std::vector<double> u_nn;
    std::vector<double> u_ref;
    bool has_reference = false;
};

inline void write_solution_csv(const std::filesystem::path& path, const SolutionTrace& trace) {
    if (trace.t.size() != trace.u_nn.size() ||
        (trace.has_reference && trace.u_ref.size() != trace.t.size()))
        throw std::invalid_argument("write_solution_csv: column lengths differ");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_solution_csv: cannot open " + path.string());
    out << "t,u_nn,u_ref,abs_err\n";
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        out << detail::format_double(trace.t[i]) << ',' << detail::format_double(trace.u_nn[i])
            << ',';
        if (trace.has_reference)
            out << detail::format_double(trace.u_ref[i]) << ','
                << detail::format_double(std::abs(trace.u_nn[i] - trace.u_ref[i]));
        else
            out << ',';
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_solution_csv: write failed for " + path.string());
}

[[nodiscard]] inline SolutionTrace read_solution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_solution_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "t,u_nn,u_ref,abs_err")
        throw std::runtime_error("read_solution_csv: bad header in " + path.string());
    SolutionTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        cells.resize(4);  // trailing blank columns drop out of getline
        trace.t.push_back(std::stod(cells[0]));
        trace.u_nn.push_back(std::stod(cells[1]));
        if (!cells[2].empty()) {
            trace.u_ref.push_back(std::stod(cells[2]));
            trace.has_reference = true;
        }
    }
    if (trace.has_reference && trace.u_ref.size() != trace.t.size())
        throw std::runtime_error("read_solution_csv: ragged u_ref column in " + path.string());
    return trace;
}

inline void write_loss_csv(const std::filesystem::path& path, std::span<const double> history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_loss_csv: cannot open " + path.string());
    out << "epoch,loss\n";
    for (std::size_t i = 0; i < history.size(); ++i)
        out << i << ',' << detail::format_double(history[i]) << '\n';
    if (!out) throw std::runtime_error("write_loss_csv: write failed for " + path.string());
}

[[nodiscard]] inline std::vector<double> read_loss_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_loss_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "epoch,loss")
        throw std::runtime_error("read_loss_csv: bad header in " + path.string());
    std::vector<double> history;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("read_loss_csv: bad row in " + path.string());
        history.push_back(std::stod(line.substr(comma + 1)));
    }
    return history;
}

struct StoredWeights {
    NetworkParams params;
    std::uint64_t seed = 0;
    bool normalize_input = true;
};

inline void save_weights(const std::filesystem::path& path, const NetworkParams& params,
                         std::uint64_t seed, bool normalize_input) {
    nlohmann::json j;
    j["spec"]["widths"] = params.spec.widths;
    j["spec"]["activation"] = to_string(params.spec.activation);
    j["seed"] = seed;
    j["theta"] = params.flatten();
    j["normalize_input"] = normalize_input;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_weights: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("save_weights: write failed for " + path.string());
}

[[nodiscard]] inline StoredWeights load_weights(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_weights: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    LayerSpec spec;
    spec.widths = j.at("spec").at("widths").get<std::vector<int>>();
    spec.activation = activation_from_string(j.at("spec").at("activation").get<std::string>());
    StoredWeights stored;
    stored.params = unflatten(spec, j.at("theta").get<std::vector<double>>());
    stored.seed = j.at("seed").get<std::uint64_t>();
    stored.normalize_input = j.at("normalize_input").get<bool>();
    return stored;
}

}  // namespace fracnn
