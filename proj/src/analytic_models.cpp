#include "cdmm/analytic_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cdmm/delay_stats.hpp"

namespace cdmm {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("straggling parameter must be positive");
}

void check_feasible(const CodeChoice& choice, int workers) {
    if (auto why = infeasibility_reason(choice, workers)) {
        throw InfeasibleError(describe(choice) + " at N=" + std::to_string(workers) + ": " + *why);
    }
}

double threshold_exact(const CodeChoice& choice, int workers, double lambda) {
    const int used = workers_used(choice, workers);
    const int k = recovery_threshold(choice, workers);
    const double alpha = scale_parameter(choice);
    return expected_kth_order_statistic(DelayModel::for_subtask(lambda, alpha), used, k);
}

}  // namespace

ProductRegimeParams ProductRegimeParams::first_regime(int tau) {
    if (tau < 0 || tau % 2 != 0) throw std::domain_error("tau must be an even non-negative integer");
    const double m = 1.0 + tau / 2.0;
    return {tau, 0.0, m + std::sqrt(m * std::log(m))};
}

double product_time_first_regime(int p, int tau, double lambda) {
    check_lambda(lambda);
    const auto params = ProductRegimeParams::first_regime(tau);
    const double p2 = static_cast<double>(p) * p;
    return (1.0 + std::log((p + tau / 2.0) / params.c_threshold) / lambda) / p2;
}

double product_time_second_regime_lower(int p, double delta, double lambda) {
    check_lambda(lambda);
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    const double p2 = static_cast<double>(p) * p;
    return (1.0 + std::log((1.0 + delta) / delta) / lambda) / p2;
}

double product_time_second_regime_upper(int p, double delta, double lambda) {
    check_lambda(lambda);
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    const double p2 = static_cast<double>(p) * p;
    return (1.0 + 2.0 / lambda * std::log((1.0 + delta + std::sqrt(1.0 + delta)) / delta)) / p2;
}

double computing_time(const CodeChoice& choice, int workers, double lambda) {
    check_lambda(lambda);
    const int k = recovery_threshold(choice, workers);
    const double p = choice.partitions;
    const double n = workers;
    switch (choice.scheme) {
        case Scheme::Repetition:
            // p = N is the uncoded split; k = N, same fallback as the threshold schemes.
            if (k == workers) return threshold_exact(choice, workers, lambda);
            return (1.0 + p / (n * lambda) * std::log(p)) / p;
        case Scheme::MDS:
        case Scheme::Polynomial:
        case Scheme::MatDot: {
            if (k == workers) return threshold_exact(choice, workers, lambda);
            return (1.0 + std::log(n / (n - k)) / lambda) / scale_parameter(choice);
        }
        case Scheme::Product: {
            const int side = product_grid_side(workers);
            if (p / side >= kProductFirstRegimeRatio) {
                return product_time_first_regime(choice.partitions, 2 * (side - choice.partitions), lambda);
            }
            const double delta = static_cast<double>(side) * side / (p * p) - 1.0;
            return product_time_second_regime_upper(choice.partitions, delta, lambda);
        }
    }
    throw std::logic_error("computing_time: unknown scheme");
}

std::optional<double> exact_expected_time(const CodeChoice& choice, int workers, double lambda) {
    check_lambda(lambda);
    check_feasible(choice, workers);
    switch (choice.scheme) {
        case Scheme::Repetition: {
            // Each block finishes at its fastest replica: min of N/p shifted exponentials is
            // shifted exponential with N/p times the rate; the slowest of p blocks adds H_p.
            const double p = choice.partitions;
            const double replicas = static_cast<double>(workers) / choice.partitions;
            return (1.0 + harmonic(choice.partitions) / (replicas * lambda)) / p;
        }
        case Scheme::MDS:
        case Scheme::Polynomial:
        case Scheme::MatDot: return threshold_exact(choice, workers, lambda);
        case Scheme::Product: return std::nullopt;
    }
    return std::nullopt;
}

double storage_master(const CodeChoice& choice, int workers, double K, double L) {
    const double k = recovery_threshold(choice, workers);
    const double n = workers_used(choice, workers);
    const double p = choice.partitions;
    const double base = 2.0 * K * L + K * K;
    switch (choice.scheme) {
        case Scheme::Repetition: return k * K * K / p + base;
        case Scheme::MDS: return (n - k) * K * L / p + k * K * K / p + base;
        case Scheme::Polynomial: return 2.0 * n * K * L / p + k * K * K / (p * p) + base;
        case Scheme::MatDot: return 2.0 * n * K * L / p + k * K * K + base;
        case Scheme::Product: return 2.0 * (n - k) * K * L / p + k * K * K / (p * p) + base;
    }
    throw std::logic_error("storage_master: unknown scheme");
}

double storage_worker(const CodeChoice& choice, double K, double L) {
    const double p = choice.partitions;
    if (p < 2) throw std::domain_error("storage_worker: p must be >= 2");
    switch (choice.scheme) {
        case Scheme::Repetition:
        case Scheme::MDS: return K * L / p + K * L + K * K / p;
        case Scheme::Polynomial:
        case Scheme::Product: return 2.0 * K * L / p + K * K / (p * p);
        case Scheme::MatDot: return 2.0 * K * L / p + K * K;
    }
    throw std::logic_error("storage_worker: unknown scheme");
}

double computing_load(const CodeChoice& choice, double K, double L) {
    const double p = choice.partitions;
    if (p < 2) throw std::domain_error("computing_load: p must be >= 2");
    switch (choice.scheme) {
        case Scheme::Repetition:
        case Scheme::MDS: return L * K * K / p;
        case Scheme::Polynomial:
        case Scheme::Product: return L * (K / p) * (K / p);
        case Scheme::MatDot: return L / p * K * K;
    }
    throw std::logic_error("computing_load: unknown scheme");
}

double success_probability(int k, int workers, double phi) {
    if (k < 1 || k > workers) throw std::domain_error("success_probability: need 1 <= k <= N");
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::domain_error("success_probability: phi must lie in [0, 1]");
    double total = 0.0;
    for (int i = workers; i >= k; --i) {
        // C(N, i) built multiplicatively; exact in double for the N used here.
        double binom = 1.0;
        for (int j = 1; j <= workers - i; ++j) binom = binom * (i + j) / j;
        total += binom * std::pow(phi, i) * std::pow(1.0 - phi, workers - i);
    }
    return std::clamp(total, 0.0, 1.0);
}

AnalysisRow analyze(const CodeChoice& choice, int workers, double K, double L, double phi, double lambda) {
    AnalysisRow row;
    row.choice = choice;
    row.workers = workers;
    row.k = recovery_threshold(choice, workers);
    row.computing_load = computing_load(choice, K, L);
    row.storage_master = storage_master(choice, workers, K, L);
    row.storage_worker = storage_worker(choice, K, L);
    row.success_probability = success_probability(row.k, workers_used(choice, workers), phi);
    row.expected_time = computing_time(choice, workers, lambda);
    return row;
}

std::vector<AnalysisRow> build_comparison_table(const std::vector<int>& workers, double K, double L, double phi,
                                                int partitions, double lambda) {
    constexpr Scheme order[] = {Scheme::Product, Scheme::Polynomial, Scheme::MatDot, Scheme::MDS,
                                Scheme::Repetition};
    std::vector<AnalysisRow> rows;
    for (Scheme s : order) {
        for (int n : workers) {
            const CodeChoice choice{s, partitions};
            const bool applicable = feasible(choice, n) && (s != Scheme::Product || is_perfect_square(n));
            if (applicable) {
                rows.push_back(analyze(choice, n, K, L, phi, lambda));
            } else {
                AnalysisRow na;
                na.choice = choice;
                na.workers = n;
                na.applicable = false;
                rows.push_back(na);
            }
        }
    }
    return rows;
}

}  // namespace cdmm
