#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdmm/acm2_selector.hpp"
#include "cdmm/codes.hpp"

namespace cdmm {

struct ExperimentConfig {
    std::string preset = "table1";
    std::vector<int> workers;  // N values
    double K = 1000.0;
    double L = 1000.0;
    std::vector<double> lambda_support{1.0};
    double phi = 1.0;
    std::optional<double> success_min;         // rho_thr
    std::optional<double> storage_worker_max;  // S_thr^w
    std::optional<double> storage_master_max;  // S_thr^m
    int partitions = 2;                        // table
    int trials = 10000;
    std::uint64_t seed = 20200601;
    int rounds = 200;  // iterate
    bool simulate = false;
    std::string format = "csv";
    std::string out;  // empty: stdout
    int threads = 0;  // 0: OpenMP default

    // select / simulate
    std::optional<Scheme> scheme;
    std::optional<int> p;
    std::optional<int> n;
    std::optional<double> lambda;

    void validate() const;
    SelectionConstraints constraints(int workers) const;
};

// table1, fig1, fig2, fig3. Throws std::invalid_argument for unknown names.
ExperimentConfig preset_config(std::string_view name);

// Overlays keys present in `j` onto `base`. Unknown keys are rejected.
ExperimentConfig apply_json(ExperimentConfig base, const nlohmann::json& j);

// Shortest round-trip decimal form; "nan" / "inf" for non-finite values.
std::string format_number(double v);

inline constexpr std::string_view kSweepHeader =
    "N,scheme,p_opt,k,T_analytic,T_simulated,storage_master,storage_worker,rho,selected_by_acm2";

// Comparison table, one row per (scheme, N); N/A cells for non-applicable codes.
void cmd_table(const ExperimentConfig& config, std::ostream& out);

// Per N: each scheme at its own best fixed p, plus ACM2 re-optimized per lambda.
// T_analytic averages over the uniform lambda support.
void cmd_sweep(const ExperimentConfig& config, std::ostream& out);

// One-shot selection at config.n (or the first N) and config.lambda (or the first lambda).
void cmd_select(const ExperimentConfig& config, std::ostream& out);

// ACM2 iteration log: `rounds` rounds at every N of the config.
void cmd_iterate(const ExperimentConfig& config, std::ostream& out);

// Monte Carlo statistics for one scheme.
void cmd_simulate(const ExperimentConfig& config, std::ostream& out);

// Self-check report; returns true when every fatal check passes.
bool cmd_verify(const ExperimentConfig& config, std::ostream& out);

}  // namespace cdmm
