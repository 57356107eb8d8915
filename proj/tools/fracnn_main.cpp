// CLI for the fractional-order neural solver. Flags parse in two phases:
// --model selects a bundle of per-model defaults, then any flag the user
// actually passed overrides the bundled value.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fracnn/run.hpp>

namespace {

std::vector<double> parse_alpha_list(const std::string& csv) {
    std::vector<double> alphas;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string item =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw CLI::ValidationError("--alpha", "empty entry in alpha list");
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--alpha", "not a number: '" + item + "'");
        }
        if (used != item.size())
            throw CLI::ValidationError("--alpha", "not a number: '" + item + "'");
        alphas.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return alphas;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neural solver for scalar fractional-order growth models"};

    std::string model = "exp";
    std::string alpha_csv;
    double a = 0.0, cap = 0.0, b = 0.0, u0 = 0.0, t_end = 0.0, lr = 0.0;
    int nodes = 0, epochs = 0, oracle_nodes = 0;
    std::uint64_t seed = 0;
    std::vector<int> widths;
    std::string out_dir;
    bool no_normalize = false;

    app.add_option("--model", model, "Model: exp, logistic, or harvest")
        ->check(CLI::IsMember({"exp", "logistic", "harvest"}));
    auto* o_alpha = app.add_option("--alpha", alpha_csv, "Comma-separated fractional orders in (0,1]");
    auto* o_a = app.add_option("--a", a, "Growth rate");
    auto* o_cap = app.add_option("--cap", cap, "Carrying capacity (logistic, harvest)");
    auto* o_b = app.add_option("--b", b, "Harvesting amplitude (harvest)");
    auto* o_u0 = app.add_option("--u0", u0, "Initial value");
    auto* o_tend = app.add_option("--t-end", t_end, "End of the time interval");
    auto* o_nodes = app.add_option("--nodes", nodes, "Number of grid nodes (including t=0)");
    auto* o_epochs = app.add_option("--epochs", epochs, "Training epochs");
    auto* o_lr = app.add_option("--lr", lr, "Adam learning rate");
    auto* o_widths = app.add_option("--widths", widths, "Layer widths, e.g. --widths 1 42 42 1");
    auto* o_seed = app.add_option("--seed", seed, "Initialization seed");
    auto* o_oracle =
        app.add_option("--oracle-nodes", oracle_nodes,
                       "Reference-solver grid nodes (0 disables the marching reference)");
    auto* o_out = app.add_option("--out", out_dir, "Output directory");
    app.add_flag("--no-normalize", no_normalize, "Feed raw t to the network instead of t/t_end");

    try {
        app.parse(argc, argv);

        fracnn::RunManifest manifest = fracnn::defaults_for(model);
        if (o_alpha->count()) manifest.alphas = parse_alpha_list(alpha_csv);
        if (o_a->count()) manifest.a = a;
        if (o_cap->count()) manifest.cap = cap;
        if (o_b->count()) manifest.b = b;
        if (o_u0->count()) manifest.u0 = u0;
        if (o_tend->count()) manifest.t_end = t_end;
        if (o_nodes->count()) manifest.nodes = nodes;
        if (o_epochs->count()) manifest.epochs = epochs;
        if (o_lr->count()) manifest.learning_rate = lr;
        if (o_widths->count()) manifest.widths = widths;
        if (o_seed->count()) manifest.seed = seed;
        if (o_oracle->count()) manifest.oracle_nodes = oracle_nodes;
        if (o_out->count()) manifest.out_dir = out_dir;
        manifest.normalize_input = !no_normalize;

        return fracnn::run(manifest);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
