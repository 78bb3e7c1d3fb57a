// Command-line front end: table, sweep, select, iterate, simulate, verify.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdmm/experiment.hpp"

namespace {

struct Flags {
    std::string preset;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> out;
    bool simulate = false;
    std::optional<std::string> format;
    std::optional<std::string> scheme;
    std::optional<int> p;
    std::optional<int> n;
    std::optional<double> lambda;
    std::optional<int> threads;
    std::optional<int> rounds;
};

cdmm::ExperimentConfig resolve(const Flags& f) {
    auto config = cdmm::preset_config(f.preset.empty() ? "table1" : f.preset);
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::runtime_error("cannot open config " + f.config_path);
        auto j = nlohmann::json::parse(in);
        // An explicit --preset wins over the preset named in the file.
        if (!f.preset.empty()) j.erase("preset");
        config = cdmm::apply_json(config, j);
    }
    if (f.seed) config.seed = *f.seed;
    if (f.trials) config.trials = *f.trials;
    if (f.out) config.out = *f.out;
    if (f.simulate) config.simulate = true;
    if (f.format) config.format = *f.format;
    if (f.scheme) {
        auto s = cdmm::parse_scheme(*f.scheme);
        if (!s) throw std::invalid_argument("unknown scheme '" + *f.scheme + "'");
        config.scheme = *s;
    }
    if (f.p) config.p = *f.p;
    if (f.n) config.n = *f.n;
    if (f.lambda) config.lambda = *f.lambda;
    if (f.threads) config.threads = *f.threads;
    if (f.rounds) config.rounds = *f.rounds;
    config.validate();
    return config;
}

// Buffers the whole output so a failed run never leaves a partial file behind.
int emit(const cdmm::ExperimentConfig& config, const std::string& text) {
    if (config.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(config.out, std::ios::binary);
    file << text;
    if (!file) {
        std::cerr << "error: cannot write " << config.out << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed matrix multiplication: analysis, selection and simulation"};
    app.require_subcommand(1);
    Flags f;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", f.preset, "table1 | fig1 | fig2 | fig3")
            ->check(CLI::IsMember({"table1", "fig1", "fig2", "fig3"}));
        sub->add_option("--config", f.config_path, "JSON config file; flags override it")->check(CLI::ExistingFile);
        sub->add_option("--seed", f.seed, "master seed");
        sub->add_option("--trials", f.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--out", f.out, "output path (default stdout)");
        sub->add_flag("--simulate", f.simulate, "add Monte Carlo columns");
        sub->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--scheme", f.scheme, "rep | mds | poly | matdot | pro");
        sub->add_option("--p", f.p, "partitions")->check(CLI::Range(2, 1 << 20));
        sub->add_option("--n", f.n, "workers")->check(CLI::Range(2, 1 << 20));
        sub->add_option("--lambda", f.lambda, "straggling rate")->check(CLI::PositiveNumber);
        sub->add_option("--threads", f.threads, "OpenMP threads (0 = default)")->check(CLI::NonNegativeNumber);
        sub->add_option("--rounds", f.rounds, "selection rounds for iterate")->check(CLI::PositiveNumber);
    };

    auto* table = app.add_subcommand("table", "comparison table of the five codes");
    auto* sweep = app.add_subcommand("sweep", "per-N best time of every scheme and of the adaptive selector");
    auto* select = app.add_subcommand("select", "one-shot code selection");
    auto* iterate = app.add_subcommand("iterate", "selection log over random straggling rates");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo statistics for one code");
    auto* verify = app.add_subcommand("verify", "self-check report");
    for (auto* sub : {table, sweep, select, iterate, simulate, verify}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    cdmm::ExperimentConfig config;
    try {
        config = resolve(f);
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::ostringstream buf;
        bool ok = true;
        if (table->parsed()) cdmm::cmd_table(config, buf);
        else if (sweep->parsed()) cdmm::cmd_sweep(config, buf);
        else if (select->parsed()) cdmm::cmd_select(config, buf);
        else if (iterate->parsed()) cdmm::cmd_iterate(config, buf);
        else if (simulate->parsed()) cdmm::cmd_simulate(config, buf);
        else if (verify->parsed()) ok = cdmm::cmd_verify(config, buf);
        const int rc = emit(config, buf.str());
        if (rc != 0) return rc;
        return ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
