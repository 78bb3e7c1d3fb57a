#pragma once

#include <optional>
#include <vector>

#include "cdmm/codes.hpp"

namespace cdmm {

// One code's figures of merit at a given (N, K, L, phi, lambda).
struct AnalysisRow {
    CodeChoice choice;
    int workers = 0;
    bool applicable = true;  // false renders as N/A; the numeric fields are then unset
    int k = 0;
    double computing_load = 0.0;   // gamma, scalar multiplications per worker
    double storage_master = 0.0;   // entries
    double storage_worker = 0.0;   // entries
    double success_probability = 0.0;
    double expected_time = 0.0;
};

// Product-code asymptotics. tau is even; c = (1+tau/2) + sqrt((1+tau/2) ln(1+tau/2)).
struct ProductRegimeParams {
    int tau = 0;
    double delta = 0.0;
    double c_threshold = 1.0;

    static ProductRegimeParams first_regime(int tau);
};

// First regime, (p + tau/2)^2 workers: (1/p^2)(1 + ln((p + tau/2)/c)/lambda).
double product_time_first_regime(int p, int tau, double lambda);

// Second regime, (1+delta) p^2 workers: lower and upper bounds.
double product_time_second_regime_lower(int p, double delta, double lambda);
double product_time_second_regime_upper(int p, double delta, double lambda);

// Ratio p / floor(sqrt N) at or above which the first regime is used.
inline constexpr double kProductFirstRegimeRatio = 0.8;

// Log-approximated expected computing time. When k = N (including repetition at p = N)
// the exact harmonic-number expectation is returned instead. Throws InfeasibleError.
double computing_time(const CodeChoice& choice, int workers, double lambda);

// Expectation without the log approximation. Threshold schemes: (1/alpha)(1 + (H_N - H_{N-k})/lambda).
// Repetition: max over p blocks of the min over N/p replicas, (1/p)(1 + p H_p / (N lambda)).
// Product has no closed form; returns nullopt (see sim_engine::expected_time).
std::optional<double> exact_expected_time(const CodeChoice& choice, int workers, double lambda);

double storage_master(const CodeChoice& choice, int workers, double K, double L);
double storage_worker(const CodeChoice& choice, double K, double L);
double computing_load(const CodeChoice& choice, double K, double L);

// P(at least k of N workers survive), each independently with probability phi.
double success_probability(int k, int workers, double phi);

// Full row for a feasible (choice, N). Product codes are evaluated on the floor(sqrt N)^2 grid.
AnalysisRow analyze(const CodeChoice& choice, int workers, double K, double L, double phi, double lambda);

// One row per (scheme, N) at a fixed partition count, schemes in the order
// product, polynomial, MatDot, MDS, repetition. A product row needs a perfect-square N
// (k and rho are defined over all N workers); other rows follow `feasible`.
std::vector<AnalysisRow> build_comparison_table(const std::vector<int>& workers, double K, double L, double phi,
                                                int partitions = 2, double lambda = 1.0);

}  // namespace cdmm
