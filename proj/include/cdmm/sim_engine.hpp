#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdmm/codes.hpp"
#include "cdmm/delay_stats.hpp"

namespace cdmm {

enum class WorkerStatus { Returned, Failed, Idle };

struct WorkerDelay {
    WorkerStatus status = WorkerStatus::Returned;
    double delay = 0.0;  // +inf unless Returned
};

struct RoundOutcome {
    std::vector<WorkerDelay> per_worker;
    bool decodable = false;
    double completion_time = 0.0;  // +inf when undecodable
    // Workers returned by completion_time (all returned workers when undecodable).
    CompletionPattern completed_at_decode{0};
};

// Earliest time at which the returned workers form a decodable set.
RoundOutcome resolve_round(const CodeChoice& choice, int workers, std::vector<WorkerDelay> per_worker);

// Each worker fails with probability 1 - phi; survivors draw (1/alpha)(1 + E/lambda).
// Workers beyond floor(sqrt N)^2 are idle under product codes and draw nothing.
RoundOutcome simulate_round(const CodeChoice& choice, int workers, double lambda, double phi, Rng& rng);

struct ExperimentStats {
    int trials = 0;
    int decodable_trials = 0;
    double mean_completion = 0.0;  // over decodable trials; NaN if none
    double std_error = 0.0;        // of mean_completion
    double undecodable_fraction = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;

    bool operator==(const ExperimentStats&) const = default;
};

// Summary of per-trial completion times (+inf = undecodable), in trial order.
ExperimentStats summarize(const std::vector<double>& completion_times);

// Trial t runs simulate_round on Rng(derive_seed(master_seed, t)). OpenMP over trials;
// the result is bit-identical for any thread count. threads <= 0 uses the OpenMP default.
ExperimentStats run_experiment(const CodeChoice& choice, int workers, double lambda, double phi, int trials,
                               std::uint64_t master_seed, int threads = 0);

// Single-threaded reference for run_experiment.
ExperimentStats run_experiment_serial(const CodeChoice& choice, int workers, double lambda, double phi, int trials,
                                      std::uint64_t master_seed);

// Closed-form expectation when one exists, otherwise the Monte Carlo mean at phi = 1.
double expected_time(const CodeChoice& choice, int workers, double lambda, int trials, std::uint64_t master_seed);

struct EmpiricalComparison {
    double simulated_mean = 0.0;
    double simulated_std_error = 0.0;
    double exact = 0.0;
    bool exact_is_closed_form = true;
    double log_approx = 0.0;
    double gap_simulated_exact = 0.0;  // |sim - exact| / exact
    double gap_exact_log = 0.0;        // |exact - log| / exact
    double gap_simulated_log = 0.0;    // |sim - log| / log
};

EmpiricalComparison empirical_vs_analytic(const CodeChoice& choice, int workers, double lambda, int trials,
                                          std::uint64_t master_seed, int threads = 0);

}  // namespace cdmm
